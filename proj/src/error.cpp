#include "fq/error.hpp"

namespace fq {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotRational: return "NotRational";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::PerfectSquareInput: return "PerfectSquareInput";
    case Errc::OddRamification: return "OddRamification";
    case Errc::DuplicatePrime: return "DuplicatePrime";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::IdentityPower: return "IdentityPower";
    case Errc::UnsupportedGroup: return "UnsupportedGroup";
    case Errc::InconsistentScenario: return "InconsistentScenario";
    case Errc::UnsupportedK2: return "UnsupportedK2";
    case Errc::BadWeight: return "BadWeight";
    case Errc::BranchNotDivisible: return "BranchNotDivisible";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
    case Errc::GoldenMismatch: return "GoldenMismatch";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::domain_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

}  // namespace fq

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fq {

enum class Errc {
  DivisionByZero,
  NotRational,
  NotSquarefree,
  OutOfRange,
  NotPrime,
  ZeroInput,
  PerfectSquareInput,
  OddRamification,
  DuplicatePrime,
  UnsupportedOrder,
  NotPrimePower,
  NotCoprime,
  IdentityPower,
  UnsupportedGroup,
  InconsistentScenario,
  UnsupportedK2,
  BadWeight,
  BranchNotDivisible,
  ParseError,
  UsageError,
  GoldenMismatch,
};

std::string_view errc_name(Errc code);

// Every library failure is one of these; the CLI maps code() to an exit status.
class Error : public std::domain_error {
 public:
  Error(Errc code, const std::string& detail);
  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace fq

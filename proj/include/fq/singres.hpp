#pragma once

#include "fq/exactnum.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fq {

// A_{n,q}: C^2 / (x,y) -> (zeta x, zeta^q y). Stored with q <= q^-1 mod n.
struct SingularityType {
  int n = 2;
  int q = 1;

  // "A1", "A5" for q = n-1, else "A_{8,3}".
  std::string name() const;
  friend auto operator<=>(const SingularityType&, const SingularityType&) = default;
};

SingularityType canonical(int n, int q);
// Accepts "A1", "A_5", "A_{8,3}", "A_{10,7}"; the result is canonical.
SingularityType parse_singularity(std::string_view text);

struct ExceptionalChain {
  std::vector<int> selfints;  // C_i^2 = -selfints[i]
  friend bool operator==(const ExceptionalChain&, const ExceptionalChain&) = default;
};

struct ResolutionData {
  ExceptionalChain chain;
  std::vector<Rational> discrepancies;
  Rational delta_k2;
  int delta_e = 0;
};

ExceptionalChain hj_chain(const SingularityType& s);
// Same expansion for a raw pair, used to check the q <-> q^-1 duality.
ExceptionalChain hj_chain(int n, int q);
Rational continued_fraction_value(const ExceptionalChain& chain);
std::vector<Rational> discrepancies(const ExceptionalChain& chain);
Rational delta_k2(const SingularityType& s);
int delta_e(const SingularityType& s);
ResolutionData resolve(const SingularityType& s);

// Multiset of singularities on a quotient surface.
class SingularConfiguration {
 public:
  SingularConfiguration() = default;
  void add(const SingularityType& s, int multiplicity = 1);
  void merge(const SingularConfiguration& other);

  const std::map<SingularityType, int>& counts() const { return counts_; }
  int total_points() const;
  Rational total_delta_k2() const;
  int total_delta_e() const;
  bool empty() const { return counts_.empty(); }

  // "2A_{8,3} + 2A_{8,5}", ordered by (n, q); "smooth" when empty.
  std::string to_string() const;
  friend auto operator<=>(const SingularConfiguration&, const SingularConfiguration&) = default;

 private:
  std::map<SingularityType, int> counts_;
};

SingularConfiguration parse_configuration(std::string_view text);

}  // namespace fq

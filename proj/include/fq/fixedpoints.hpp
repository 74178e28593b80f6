#pragma once

#include "fq/exactnum.hpp"
#include "fq/singres.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fq {

// Tangent action of a stabilizer generator: eigenvalues (zeta_n^a, zeta_n^b),
// zeta_n = exp(2 pi i / n). Unordered; a <= b after normalization.
struct EigenType {
  int n = 2;
  int a = 1;
  int b = 1;

  static EigenType make(int n, int a, int b);
  SingularityType singularity() const;
  friend auto operator<=>(const EigenType&, const EigenType&) = default;
};

// Orbits of points whose stabilizer in <sigma> has the given order.
struct Stratum {
  int stabilizer = 1;
  int orbit_size = 1;
  std::vector<EigenType> orbits;  // one entry per orbit, types of the stabilizer generator
};

struct FixedConfig {
  int n = 2;
  std::vector<Stratum> strata;

  // |Fix(sigma^k)|
  int fixed_count(int k) const;
  SingularConfiguration singularities() const;
  // stabilizer order -> number of points
  std::map<int, int> census() const;
};

// sum over Fix(sigma^k) of 1/det(1 - d sigma^k), exactly
CyclotomicNumber holomorphic_sum(const FixedConfig& config, int k);

Rational zhang_coefficient(int p, int i);
// All (r_1, ..., r_{p-1}) with sum num_points and sum r_i a_i(p) = 1.
std::vector<std::vector<int>> zhang_solutions(int p, int num_points);
SingularConfiguration zhang_configuration(int p, const std::vector<int>& r);

// Every fixed-point configuration of an order-n automorphism passing the
// Lefschetz constraints for all powers. n in 2..12.
std::vector<FixedConfig> enumerate_cyclic_raw(int n);
// Distinct singular configurations of S/<sigma>, sorted.
std::vector<SingularConfiguration> enumerate_cyclic(int n);

bool is_reflection(int n, int a, int b);

struct KleinFourResult {
  SingularConfiguration config;
  std::map<int, int> census;
  // faithful characters pairs of (Z/2)^2 checked for a reflection
  int faithful_representations = 0;
  int with_reflection = 0;
};
KleinFourResult enumerate_klein_four();

struct DihedralBranch {
  SingularConfiguration rotation_config;
  int rotation_fixed_points = 0;
  std::map<int, int> census;
  Rational euler = 0;
  bool accepted = false;
  std::string reason;
  std::optional<SingularConfiguration> quotient_config;
};

struct DihedralResult {
  int m = 4;  // rotation order; the group has order 2m
  std::vector<SingularConfiguration> configs;
  std::vector<DihedralBranch> branches;
};
DihedralResult enumerate_dihedral(int m);

struct ImpossibilityReport {
  int p = 3;
  // ways to write |Fix(sigma_1)| = 4 as fixed + p * (free orbits)
  std::vector<std::pair<int, int>> orbit_splits;
  bool common_fixed_point_forced = false;
  int faithful_representations = 0;
  int with_reflection = 0;
  bool impossible = false;
  std::vector<std::string> steps;
};
ImpossibilityReport impossibility(int p);

}  // namespace fq

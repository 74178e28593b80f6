#pragma once

#include "fq/exactnum.hpp"
#include "fq/quadfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fq {

// Finite groups as they occur as automorphism groups. dihedral(n) has order 2n.
struct GroupDescriptor {
  enum class Kind { cyclic, dihedral, klein_four, elem_abelian_2, extension };

  Kind kind = Kind::cyclic;
  // cyclic: n; dihedral: n; elem_abelian_2: rank; extension: order of the normal cyclic subgroup
  int n = 1;
  bool resolved = true;
  // extension only: order of a known cyclic subgroup
  std::optional<int> cyclic_subgroup;

  static GroupDescriptor cyclic(int n);
  static GroupDescriptor dihedral(int n);
  static GroupDescriptor klein_four();
  static GroupDescriptor elem_abelian_2(int rank);
  // Extension of (Z/2Z)^2 by a normal cyclic group of order c, structure unresolved.
  static GroupDescriptor extension(int c, std::optional<int> cyclic_subgroup);

  int order() const;
  std::string name() const;
  std::string_view kind_name() const;
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

struct QuaternionData {
  QuadraticField field;
  std::vector<PrimeSplit> ramified;
  std::string name() const;
};

QuaternionData make_algebra(const QuadraticField& k, std::vector<PrimeSplit> primes);

bool embeds_quadratic(const QuaternionData& B, const QFElement& delta);

// t_m = zeta_2m + zeta_2m^-1 when it lies in k; m in 2..6.
std::optional<QFElement> torsion_trace(const QuadraticField& k, int m);
bool torsion_order_exists(const QuaternionData& B, int m);
std::vector<int> torsion_orders(const QuaternionData& B);

struct NormKernel {
  long long q = 0;
  long long order = 0;
  bool cyclic = false;
  std::string modulus;  // defining polynomial of F_{q^2} over F_p
};
// Explicit enumeration of ker(N: F_{q^2}* -> F_q*).
NormKernel norm_kernel_by_enumeration(long long q);
GroupDescriptor riehm_norm1_quotient(long long q);
long long gamma1_quotient_order(long long q, long long p);

Rational shimizu_euler(const QuaternionData& B);

struct LevelFactor {
  enum class Kind { principal, intermediate, normalizer_extension };
  Kind kind = Kind::principal;
  std::optional<PrimeSplit> prime;  // absent for normalizer_extension
  int image_order = 0;              // intermediate: order of the image in the cyclic quotient
  int degree = 0;                   // normalizer_extension: index of Gamma^1 in the larger group

  static LevelFactor principal(const PrimeSplit& p);
  static LevelFactor intermediate(const PrimeSplit& p, int image_order);
  static LevelFactor normalizer_extension(int degree);
};

struct SubgroupSpec {
  std::vector<LevelFactor> level;
  Rational index_in_base = 1;  // below 1 for groups containing Gamma^1
  std::string name;
};

SubgroupSpec make_subgroup(const QuaternionData& B, std::vector<LevelFactor> level);
Rational euler_of_subgroup(const Rational& e, const SubgroupSpec& spec);

struct TorsionCheck {
  bool torsion_free = false;
  std::vector<std::string> reasons;
  // True when part of the verdict is a recorded criterion rather than derived.
  bool relies_on_record = false;
};
TorsionCheck torsion_free_check(const QuaternionData& B, const SubgroupSpec& spec);

QFElement nrd_one_plus_torsion(const QuadraticField& k, int m);

GroupDescriptor assemble_automorphism_group(int g_order, bool inverting_involution_outside);

struct NormalizerRank {
  int value = 0;
  bool lower_bound = true;
};
NormalizerRank normalizer_quotient_rank(const QuaternionData& B);

}  // namespace fq

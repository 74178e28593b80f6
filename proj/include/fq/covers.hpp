#pragma once

#include "fq/exactnum.hpp"
#include "fq/quotient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fq {

// Linear code over F_2 or F_3; vectors are coefficient lists.
struct KernelCode {
  int characteristic = 2;
  int length = 0;
  std::vector<std::vector<int>> basis;

  int dimension() const { return static_cast<int>(basis.size()); }
  // all nonzero words, sorted
  std::vector<std::vector<int>> words() const;
};

// Lower bound on dim ker psi from the isotropic bound floor(b2 / 2).
int isotropic_dimension_bound(int b2, int k);

// Binary codes of length k (1..8) whose nonzero words all have weight 4 and
// whose support is every coordinate, one per permutation class.
std::vector<KernelCode> weight4_codes(int k);
// Canonical representative of a binary code under coordinate permutation.
KernelCode canonical_code(const KernelCode& c);

struct CoverInvariants {
  Rational k2 = 0;
  Rational c2 = 0;
  Rational chi = 0;
  std::optional<int> irregularity_bound;
};

// (Z/2)^r cover branched on k disjoint nodal curves, (-1)-curves contracted.
CoverInvariants double_cover_invariants(const SurfaceInvariants& y, int k, int r);
// Same cover before contraction, from K = pi^*(K_Y + Sigma/2) and the Euler number.
CoverInvariants double_cover_uncontracted(const SurfaceInvariants& y, int k, int r);

struct BranchCurve {
  int self_intersection = -3;
  int canonical_degree = 1;  // K_W . C
};

struct TripleCoverInput {
  Rational k2 = 0;
  Rational c2 = 0;
  Rational chi = 0;
  std::vector<BranchCurve> branch;  // pairwise disjoint
};
CoverInvariants triple_cover_invariants(const TripleCoverInput& w);

struct ClosureReport {
  bool consistent = true;
  std::vector<int> forced;  // indices with v_i = 0 on a violated row
};
// rows: intersection numbers (0 or 1) of each test curve with the candidates.
ClosureReport branch_closure_f3(const std::vector<std::vector<int>>& rows, const std::vector<int>& v);

struct KernelAnalysis {
  std::vector<std::vector<int>> solutions;  // nonzero v passing every row, up to sign
  std::vector<int> admissible_r;            // branch sizes with 3 | r among them
  int max_dimension = 0;  // largest subspace whose nonzero vectors all have 3 | r
};
KernelAnalysis f3_kernel_analysis(const std::vector<std::vector<int>>& rows, int candidates);

CoverInvariants blowdown_ledger(const CoverInvariants& start, int count);

struct PipelineStep {
  std::string label;
  CoverInvariants inv;
};

struct Reconstruction {
  std::string name;
  std::vector<PipelineStep> steps;
  CoverInvariants result;
  bool fake_quadric_invariants = false;  // (8, 4, 1)
};

Reconstruction double_cover_reconstruction();
Reconstruction bidouble_cover_reconstruction();
Reconstruction triple_cover_reconstruction();

}  // namespace fq

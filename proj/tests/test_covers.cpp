#include "doctest.h"

#include "fq/covers.hpp"
#include "fq/error.hpp"

#include <bit>
#include <set>

using namespace fq;

namespace {

SurfaceInvariants surface(long long k2, long long c2) {
  SurfaceInvariants y;
  y.k2 = k2;
  y.c2 = c2;
  y.chi = Rational(k2 + c2) / 12;
  return y;
}

// every r x k generator matrix, no clever pruning
std::set<std::vector<std::vector<int>>> brute_force_classes(int k) {
  std::set<std::set<unsigned>> seen;
  std::set<std::vector<std::vector<int>>> out;
  for (int r = 1; r <= 3; ++r) {
    unsigned limit = 1u << (r * k);
    for (unsigned m = 0; m < limit; ++m) {
      std::vector<unsigned> rows(r);
      for (int i = 0; i < r; ++i) rows[i] = (m >> (i * k)) & ((1u << k) - 1);
      bool ok = true;
      unsigned support = 0;
      std::set<unsigned> words;
      for (unsigned c = 1; c < (1u << r) && ok; ++c) {
        unsigned w = 0;
        for (int i = 0; i < r; ++i)
          if (c >> i & 1) w ^= rows[i];
        ok = std::popcount(w) == 4;  // also rules out dependent rows
        support |= w;
        words.insert(w);
      }
      if (!ok || support != (1u << k) - 1 || !seen.insert(words).second) continue;
      KernelCode code;
      code.length = k;
      for (unsigned row : rows) {
        std::vector<int> v(k);
        for (int j = 0; j < k; ++j) v[j] = row >> (k - 1 - j) & 1;
        code.basis.push_back(v);
      }
      out.insert(canonical_code(code).basis);
    }
  }
  return out;
}

void check_same(const CoverInvariants& c, long long k2, long long c2, long long chi) {
  CHECK(c.k2 == k2);
  CHECK(c.c2 == c2);
  CHECK(c.chi == chi);
}

}  // namespace

TEST_CASE("isotropic dimension bound") {
  CHECK(isotropic_dimension_bound(6, 4) == 1);
  CHECK(isotropic_dimension_bound(8, 6) == 2);
  CHECK(isotropic_dimension_bound(8, 0) == 0);
  CHECK_THROWS_AS(isotropic_dimension_bound(-1, 2), Error);
}

TEST_CASE("weight-4 codes") {
  auto four = weight4_codes(4);
  REQUIRE(four.size() == 1);
  CHECK(four[0].basis == std::vector<std::vector<int>>{{1, 1, 1, 1}});

  auto six = weight4_codes(6);
  REQUIRE(six.size() == 1);
  CHECK(six[0].basis == std::vector<std::vector<int>>{{1, 1, 1, 1, 0, 0}, {1, 1, 0, 0, 1, 1}});
  KernelCode shuffled{2, 6, {{0, 1, 1, 0, 1, 1}, {1, 1, 0, 1, 1, 0}}};
  CHECK(canonical_code(shuffled).basis == six[0].basis);

  CHECK(weight4_codes(3).empty());
  CHECK(weight4_codes(5).empty());
  CHECK(weight4_codes(1).empty());
  auto seven = weight4_codes(7);
  REQUIRE(seven.size() == 1);
  CHECK(seven[0].dimension() == 3);
  CHECK(weight4_codes(8).empty());
  CHECK_THROWS_AS(weight4_codes(9), Error);

  for (int k = 1; k <= 8; ++k) {
    for (const auto& c : weight4_codes(k)) {
      auto words = c.words();
      CHECK(words.size() == (1u << c.dimension()) - 1);
      for (const auto& w : words) CHECK(std::count(w.begin(), w.end(), 1) == 4);
      CHECK((1 << c.dimension()) - 1 <= k);
    }
  }
}

TEST_CASE("code enumeration agrees with brute force over generator matrices") {
  for (int k = 1; k <= 7; ++k) {
    std::set<std::vector<std::vector<int>>> fast;
    for (const auto& c : weight4_codes(k)) fast.insert(c.basis);
    CHECK(fast == brute_force_classes(k));
  }
}

TEST_CASE("double and bidouble covers") {
  auto a = double_cover_invariants(surface(4, 8), 4, 1);
  check_same(a, 8, 4, 1);
  REQUIRE(a.irregularity_bound.has_value());
  CHECK(*a.irregularity_bound == 1);

  auto b = double_cover_invariants(surface(2, 10), 6, 2);
  check_same(b, 8, 4, 1);
  CHECK_FALSE(b.irregularity_bound.has_value());

  auto trivial = double_cover_invariants(surface(3, 9), 0, 0);
  check_same(trivial, 3, 9, 1);

  for (auto [k, r] : {std::pair{6, 1}, std::pair{5, 2}, std::pair{3, 0}}) {
    try {
      double_cover_invariants(surface(2, 10), k, r);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadWeight);
    }
  }

  // contraction ledger from the uncontracted cover
  auto raw_a = double_cover_uncontracted(surface(4, 8), 4, 1);
  check_same(raw_a, 4, 8, 1);
  check_same(blowdown_ledger(raw_a, 4), 8, 4, 1);
  auto raw_b = double_cover_uncontracted(surface(2, 10), 6, 2);
  check_same(raw_b, -4, 16, 1);
  check_same(blowdown_ledger(raw_b, 12), 8, 4, 1);
}

TEST_CASE("triple covers") {
  TripleCoverInput w{0, 12, 1, std::vector<BranchCurve>(6)};
  auto r = triple_cover_invariants(w);
  check_same(r, 0, 12, 1);

  TripleCoverInput etale{1, 11, 1, {}};
  check_same(triple_cover_invariants(etale), 3, 33, 3);

  for (int n : {3, 6}) {
    TripleCoverInput t{0, 12, 1, std::vector<BranchCurve>(n)};
    auto inv = triple_cover_invariants(t);
    CHECK(inv.chi == (inv.k2 + inv.c2) / 12);
    CHECK(inv.c2 == 36 - 4 * n);
  }
  TripleCoverInput four{0, 12, 1, std::vector<BranchCurve>(4)};
  try {
    triple_cover_invariants(four);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BranchNotDivisible);
  }
}

TEST_CASE("branch closure over F_3") {
  std::vector<std::vector<int>> e{{0, 0, 1, 1, 0, 0}};
  auto rep = branch_closure_f3(e, {0, 0, 1, 0, 0, 0});
  CHECK_FALSE(rep.consistent);
  CHECK(rep.forced == std::vector<int>{3});
  CHECK(branch_closure_f3(e, {0, 0, 0, 0, 0, 0}).consistent);
  CHECK(branch_closure_f3(e, {0, 0, 1, 2, 0, 0}).consistent);
  CHECK_THROWS_AS(branch_closure_f3(e, {1, 2}), Error);

  std::vector<std::vector<int>> both{{0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}};
  auto loose = f3_kernel_analysis(both, 6);
  CHECK(loose.admissible_r == std::vector<int>{3, 6});

  auto with_k = both;
  with_k.push_back({1, 1, 1, 1, 1, 1});
  auto tight = f3_kernel_analysis(with_k, 6);
  CHECK(tight.admissible_r == std::vector<int>{6});
  CHECK(tight.max_dimension == 1);
  // v1 = -v2, v3 = -v4, v5 = -v6: 26 nonzero solutions, 13 up to sign
  CHECK(tight.solutions.size() == 13);
}

TEST_CASE("blow-down ledger") {
  CoverInvariants start{0, 12, 1, std::nullopt};
  check_same(blowdown_ledger(start, 8), 8, 4, 1);
  CoverInvariants fq{8, 4, 1, std::nullopt};
  check_same(blowdown_ledger(fq, 0), 8, 4, 1);
  CHECK_THROWS_AS(blowdown_ledger(fq, -1), Error);
}

TEST_CASE("reconstructions end to end") {
  for (const auto& rec : {double_cover_reconstruction(), bidouble_cover_reconstruction(), triple_cover_reconstruction()}) {
    CHECK(rec.fake_quadric_invariants);
    check_same(rec.result, 8, 4, 1);
    for (const auto& s : rec.steps) CHECK(s.inv.chi == (s.inv.k2 + s.inv.c2) / 12);
  }
  auto t = triple_cover_reconstruction();
  REQUIRE(t.steps.size() == 5);
  check_same(t.steps[1].inv, 0, 12, 1);
  check_same(t.steps[2].inv, 0, 12, 1);
}

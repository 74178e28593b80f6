#include "fq/covers.hpp"

#include "fq/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>

namespace fq {

namespace {

using Word = std::uint32_t;

// coordinate 0 is the most significant bit so that sorted order reads left to right
Word to_word(const std::vector<int>& v) {
  Word w = 0;
  for (int x : v) w = (w << 1) | static_cast<Word>(x & 1);
  return w;
}

std::vector<int> from_word(Word w, int k) {
  std::vector<int> v(k);
  for (int i = k - 1; i >= 0; --i, w >>= 1) v[i] = static_cast<int>(w & 1);
  return v;
}

std::vector<Word> span(const std::vector<Word>& gens) {
  std::set<Word> out{0};
  for (Word g : gens) {
    std::set<Word> next = out;
    for (Word c : out) next.insert(c ^ g);
    out = std::move(next);
  }
  out.erase(0);
  return {out.begin(), out.end()};
}

std::vector<Word> greedy_basis(std::vector<Word> words) {
  std::sort(words.rbegin(), words.rend());
  std::vector<Word> basis, reduced;
  for (Word w : words) {
    Word x = w;
    for (Word r : reduced) x = std::min(x, x ^ r);
    if (x == 0) continue;
    basis.push_back(w);
    reduced.push_back(x);
    std::sort(reduced.rbegin(), reduced.rend());
  }
  return basis;
}

Word permute(Word w, const std::vector<int>& perm, int k) {
  Word out = 0;
  for (int i = 0; i < k; ++i)
    if (w >> (k - 1 - i) & 1) out |= Word{1} << (k - 1 - perm[i]);
  return out;
}

// Permutation class key: the largest descending word list over all relabelings.
std::vector<Word> class_key(const std::vector<Word>& words, int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Word> best;
  do {
    std::vector<Word> img;
    img.reserve(words.size());
    for (Word w : words) img.push_back(permute(w, perm, k));
    std::sort(img.rbegin(), img.rend());
    if (img > best) best = std::move(img);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

KernelCode from_words(const std::vector<Word>& words, int k) {
  KernelCode c;
  c.characteristic = 2;
  c.length = k;
  for (Word b : greedy_basis(words)) c.basis.push_back(from_word(b, k));
  return c;
}

Rational pow2(int e) { return e >= 0 ? Rational(BigInt(1) << e) : Rational(1) / Rational(BigInt(1) << -e); }

}  // namespace

std::vector<std::vector<int>> KernelCode::words() const {
  if (characteristic != 2) {
    // enumerate coefficient tuples over F_3
    std::set<std::vector<int>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= 3;
    for (std::size_t idx = 1; idx < total; ++idx) {
      std::vector<int> v(length, 0);
      std::size_t t = idx;
      for (const auto& b : basis) {
        int coef = static_cast<int>(t % 3);
        t /= 3;
        for (int i = 0; i < length; ++i) v[i] = (v[i] + coef * b[i]) % 3;
      }
      out.insert(v);
    }
    return {out.begin(), out.end()};
  }
  std::vector<Word> gens;
  for (const auto& b : basis) gens.push_back(to_word(b));
  std::vector<std::vector<int>> out;
  for (Word w : span(gens)) out.push_back(from_word(w, length));
  std::sort(out.begin(), out.end());
  return out;
}

int isotropic_dimension_bound(int b2, int k) {
  if (b2 < 0 || k < 0) throw Error(Errc::OutOfRange, "b2 and k must be nonnegative");
  return std::max(0, k - b2 / 2);
}

KernelCode canonical_code(const KernelCode& c) {
  if (c.characteristic != 2) throw Error(Errc::OutOfRange, "canonical form only for binary codes");
  if (c.length > 10) throw Error(Errc::OutOfRange, "code too long for permutation search");
  std::vector<Word> gens;
  for (const auto& b : c.basis) gens.push_back(to_word(b));
  return from_words(class_key(span(gens), c.length), c.length);
}

std::vector<KernelCode> weight4_codes(int k) {
  if (k < 1 || k > 8) throw Error(Errc::OutOfRange, "code length must be in 1..8");
  std::vector<Word> weight4;
  for (Word w = 0; w < (Word{1} << k); ++w)
    if (std::popcount(w) == 4) weight4.push_back(w);

  // grow codes one generator at a time; k >= 2^r - 1 caps r at 3
  std::set<std::vector<Word>> layer, all;
  for (Word w : weight4) layer.insert({w});
  while (!layer.empty()) {
    all.insert(layer.begin(), layer.end());
    std::set<std::vector<Word>> next;
    for (const auto& code : layer) {
      for (Word w : weight4) {
        if (std::binary_search(code.begin(), code.end(), w)) continue;
        std::vector<Word> gens = code;
        gens.push_back(w);
        auto words = span(gens);
        bool ok = std::all_of(words.begin(), words.end(), [](Word x) { return std::popcount(x) == 4; });
        if (ok) next.insert(words);
      }
    }
    layer = std::move(next);
  }

  std::set<std::vector<Word>> classes;
  Word full = (Word{1} << k) - 1;
  for (const auto& words : all) {
    Word support = 0;
    for (Word w : words) support |= w;
    if (support == full) classes.insert(class_key(words, k));
  }
  std::vector<KernelCode> out;
  for (const auto& words : classes) out.push_back(from_words(words, k));
  std::sort(out.begin(), out.end(),
            [](const KernelCode& a, const KernelCode& b) { return a.dimension() < b.dimension(); });
  return out;
}

CoverInvariants double_cover_invariants(const SurfaceInvariants& y, int k, int r) {
  if (r < 0 || r > 3) throw Error(Errc::OutOfRange, "kernel dimension must be in 0..3");
  if (r == 0) {
    if (k != 0) throw Error(Errc::BadWeight, "trivial kernel cannot branch on curves");
  } else if (r == 1) {
    if (k % 4 != 0) throw Error(Errc::BadWeight, "a branch set of " + std::to_string(k) + " nodes is not 2-divisible");
  } else {
    if (k > 8) throw Error(Errc::OutOfRange, "kernel codes tabulated for k <= 8");
    auto codes = weight4_codes(k);
    bool found = std::any_of(codes.begin(), codes.end(), [&](const KernelCode& c) { return c.dimension() == r; });
    if (!found)
      throw Error(Errc::BadWeight, "no " + std::to_string(r) + "-dimensional weight-4 code of length " + std::to_string(k));
  }
  CoverInvariants out;
  out.k2 = pow2(r) * y.k2;
  out.chi = pow2(r) * y.chi - Rational(k) * pow2(r - 3);
  out.c2 = 12 * out.chi - out.k2;
  if (k == 4 && r == 1) out.irregularity_bound = 1;
  return out;
}

CoverInvariants double_cover_uncontracted(const SurfaceInvariants& y, int k, int r) {
  if (r < 0 || r > 3 || k < 0) throw Error(Errc::OutOfRange, "bad cover data");
  if (r == 0 && k != 0) throw Error(Errc::BadWeight, "trivial kernel cannot branch on curves");
  CoverInvariants out;
  // K.C = 0 and C^2 = -2 on each branch curve
  Rational half_sigma_sq = Rational(-2 * k) / 4;
  out.k2 = pow2(r) * (y.k2 + half_sigma_sq);
  // each branch curve (e = 2) has 2^(r-1) preimages instead of 2^r
  out.c2 = pow2(r) * y.c2 - (r == 0 ? Rational(0) : pow2(r - 1) * 2 * k);
  out.chi = (out.k2 + out.c2) / 12;
  return out;
}

CoverInvariants triple_cover_invariants(const TripleCoverInput& w) {
  int r = static_cast<int>(w.branch.size());
  if (r % 3 != 0)
    throw Error(Errc::BranchNotDivisible, "chi would be " + to_string(3 * w.chi - Rational(r) / 3));
  Rational k_dot = 0, sigma_sq = 0;
  for (const auto& c : w.branch) {
    k_dot += c.canonical_degree;
    sigma_sq += c.self_intersection;
  }
  CoverInvariants out;
  // K_R = f^*(K_W + (2/3) Sigma)
  out.k2 = 3 * (w.k2 + Rational(4, 3) * k_dot + Rational(4, 9) * sigma_sq);
  out.c2 = 3 * w.c2 - 4 * r;
  out.chi = 3 * w.chi - Rational(r) / 3;
  return out;
}

ClosureReport branch_closure_f3(const std::vector<std::vector<int>>& rows, const std::vector<int>& v) {
  ClosureReport rep;
  std::set<int> forced;
  for (const auto& row : rows) {
    if (row.size() != v.size()) throw Error(Errc::OutOfRange, "incidence row length differs from assignment");
    long long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (row[i] != 0 && row[i] != 1) throw Error(Errc::OutOfRange, "incidence values must be 0 or 1");
      s += static_cast<long long>(row[i]) * v[i];
    }
    if (positive_mod(s, 3) == 0) continue;
    rep.consistent = false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (row[i] == 1 && positive_mod(v[i], 3) == 0) forced.insert(static_cast<int>(i));
  }
  rep.forced.assign(forced.begin(), forced.end());
  return rep;
}

namespace {

int support(const std::vector<int>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](int x) { return x != 0; }));
}

std::vector<int> combine(const std::vector<int>& a, const std::vector<int>& b, int coef) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + coef * b[i]) % 3;
  return out;
}

// all nonzero elements of the span of gens over F_3
std::vector<std::vector<int>> f3_span(const std::vector<std::vector<int>>& gens, std::size_t n) {
  std::set<std::vector<int>> out{std::vector<int>(n, 0)};
  for (const auto& g : gens) {
    std::set<std::vector<int>> next = out;
    for (const auto& c : out) {
      next.insert(combine(c, g, 1));
      next.insert(combine(c, g, 2));
    }
    out = std::move(next);
  }
  out.erase(std::vector<int>(n, 0));
  return {out.begin(), out.end()};
}

void grow(std::vector<std::vector<int>>& gens, const std::vector<std::vector<int>>& pool, std::size_t from,
          std::size_t n, int& best) {
  best = std::max(best, static_cast<int>(gens.size()));
  for (std::size_t i = from; i < pool.size(); ++i) {
    gens.push_back(pool[i]);
    auto all = f3_span(gens, n);
    std::size_t expected = 1;
    for (std::size_t j = 0; j < gens.size(); ++j) expected *= 3;
    bool independent = all.size() + 1 == expected;
    bool ok = independent && std::all_of(all.begin(), all.end(), [](const auto& v) { return support(v) % 3 == 0; });
    if (ok) grow(gens, pool, i + 1, n, best);
    gens.pop_back();
  }
}

}  // namespace

KernelAnalysis f3_kernel_analysis(const std::vector<std::vector<int>>& rows, int candidates) {
  if (candidates < 1 || candidates > 8) throw Error(Errc::OutOfRange, "candidate count must be in 1..8");
  KernelAnalysis out;
  std::set<int> rs;
  std::vector<int> v(candidates, 0);
  std::size_t total = 1;
  for (int i = 0; i < candidates; ++i) total *= 3;
  for (std::size_t idx = 1; idx < total; ++idx) {
    std::size_t t = idx;
    for (int i = 0; i < candidates; ++i, t /= 3) v[i] = static_cast<int>(t % 3);
    // up to sign: first nonzero coordinate is 1
    auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (*first != 1) continue;
    if (!branch_closure_f3(rows, v).consistent) continue;
    out.solutions.push_back(v);
    if (support(v) % 3 == 0) rs.insert(support(v));
  }
  out.admissible_r.assign(rs.begin(), rs.end());
  std::vector<std::vector<int>> pool;
  for (const auto& s : out.solutions)
    if (support(s) % 3 == 0) pool.push_back(s);
  std::vector<std::vector<int>> gens;
  grow(gens, pool, 0, static_cast<std::size_t>(candidates), out.max_dimension);
  return out;
}

CoverInvariants blowdown_ledger(const CoverInvariants& start, int count) {
  if (count < 0) throw Error(Errc::OutOfRange, "blow-down count must be nonnegative");
  CoverInvariants out = start;
  out.k2 += count;
  out.c2 -= count;
  return out;
}

namespace {

SurfaceInvariants surface(long long k2, long long c2) {
  SurfaceInvariants y;
  y.k2 = k2;
  y.c2 = c2;
  y.chi = Rational(k2 + c2) / 12;
  return y;
}

CoverInvariants as_cover(const SurfaceInvariants& y) { return CoverInvariants{y.k2, y.c2, y.chi, std::nullopt}; }

bool is_fake_quadric(const CoverInvariants& c) { return c.k2 == 8 && c.c2 == 4 && c.chi == 1; }

bool same(const CoverInvariants& a, const CoverInvariants& b) { return a.k2 == b.k2 && a.c2 == b.c2 && a.chi == b.chi; }

Reconstruction two_power_cover(const std::string& name, long long k2, int k) {
  Reconstruction rec;
  rec.name = name;
  SurfaceInvariants y = surface(k2, 12 - k2);
  rec.steps.push_back({"Y with " + std::to_string(k) + " disjoint nodal curves", as_cover(y)});
  int bound = isotropic_dimension_bound(b2_from_invariants(y.k2), k);
  auto codes = weight4_codes(k);
  std::vector<KernelCode> fit;
  for (const auto& c : codes)
    if (c.dimension() >= bound) fit.push_back(c);
  if (fit.size() != 1)
    throw Error(Errc::InconsistentScenario, "expected one admissible kernel code of length " + std::to_string(k));
  int r = fit[0].dimension();
  auto raw = double_cover_uncontracted(y, k, r);
  int minus_one = k * (1 << (r - 1));
  rec.steps.push_back({"(Z/2)^" + std::to_string(r) + " cover, dim ker psi >= " + std::to_string(bound), raw});
  auto contracted = blowdown_ledger(raw, minus_one);
  rec.steps.push_back({"contract " + std::to_string(minus_one) + " (-1)-curves", contracted});
  rec.result = double_cover_invariants(y, k, r);
  if (!same(rec.result, contracted)) throw Error(Errc::InconsistentScenario, name + ": ledger and formula disagree");
  rec.fake_quadric_invariants = is_fake_quadric(rec.result);
  return rec;
}

}  // namespace

Reconstruction double_cover_reconstruction() { return two_power_cover("double cover of K^2 = 4", 4, 4); }

Reconstruction bidouble_cover_reconstruction() { return two_power_cover("bidouble cover of K^2 = 2", 2, 6); }

Reconstruction triple_cover_reconstruction() {
  Reconstruction rec;
  rec.name = "triple cover of K^2 = 2";
  SurfaceInvariants z = surface(2, 10);
  rec.steps.push_back({"Z over 2A_{3,1} + 2A_{3,2}", as_cover(z)});
  // blow up D3.D4 and D5.D6
  CoverInvariants w = as_cover(z);
  w.k2 -= 2;
  w.c2 += 2;
  rec.steps.push_back({"W: blow up 2 points", w});

  // C1, C2 are the (-3)-curves, C3..C6 the strict transforms; the last row is K_W
  std::vector<std::vector<int>> rows{{0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}, {1, 1, 1, 1, 1, 1}};
  auto kernel = f3_kernel_analysis(rows, 6);
  if (kernel.admissible_r != std::vector<int>{6} || kernel.max_dimension != 1)
    throw Error(Errc::InconsistentScenario, "branch closure did not force r = 6");

  TripleCoverInput in{w.k2, w.c2, w.chi, std::vector<BranchCurve>(6, BranchCurve{-3, 1})};
  auto r = triple_cover_invariants(in);
  rec.steps.push_back({"triple cover branched on 6 curves", r});

  // f^*C = 3C', so C'^2 = 3 C^2 / 9; f^*E = E', E'^2 = 3 E^2, and E' meets two C'
  int c_prime = 3 * -3 / 9;
  int e_prime = 3 * -1;
  if (c_prime != -1) throw Error(Errc::InconsistentScenario, "branch preimages are not (-1)-curves");
  auto after_c = blowdown_ledger(r, 6);
  rec.steps.push_back({"contract 6 (-1)-curves over the branch", after_c});
  if (e_prime + 2 != -1) throw Error(Errc::InconsistentScenario, "exceptional preimages do not become (-1)-curves");
  rec.result = blowdown_ledger(after_c, 2);
  rec.steps.push_back({"contract the 2 exceptional preimages", rec.result});
  rec.fake_quadric_invariants = is_fake_quadric(rec.result);
  return rec;
}

}  // namespace fq

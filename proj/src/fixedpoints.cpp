#include "fq/fixedpoints.hpp"

#include "fq/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>

namespace fq {

EigenType EigenType::make(int n, int a, int b) {
  a = static_cast<int>(positive_mod(a, n));
  b = static_cast<int>(positive_mod(b, n));
  if (a > b) std::swap(a, b);
  return EigenType{n, a, b};
}

SingularityType EigenType::singularity() const {
  // (x, y) -> (z^a x, z^b y) is (z' x, z'^q y) for z' = z^a, q = b / a
  return canonical(n, static_cast<int>(positive_mod(mod_inverse(a, n) * b, n)));
}

int FixedConfig::fixed_count(int k) const {
  int total = 0;
  for (const auto& s : strata)
    if (k % s.orbit_size == 0) total += s.orbit_size * static_cast<int>(s.orbits.size());
  return total;
}

SingularConfiguration FixedConfig::singularities() const {
  SingularConfiguration cfg;
  for (const auto& s : strata)
    for (const auto& t : s.orbits) cfg.add(t.singularity());
  return cfg;
}

std::map<int, int> FixedConfig::census() const {
  std::map<int, int> out;
  for (const auto& s : strata)
    if (!s.orbits.empty()) out[s.stabilizer] += s.orbit_size * static_cast<int>(s.orbits.size());
  return out;
}

namespace {

// 1/((1 - z^x)(1 - z^y)) in Q(zeta_n)
CyclotomicNumber lefschetz_term(int n, long long x, long long y) {
  CyclotomicNumber one(1, n);
  return ((one - root_of_unity(n, x)) * (one - root_of_unity(n, y))).inverse();
}

std::complex<double> lefschetz_term_approx(int n, long long x, long long y) {
  auto z = [n](long long e) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / n); };
  return 1.0 / ((1.0 - z(x)) * (1.0 - z(y)));
}

std::vector<int> units_mod(int m) {
  std::vector<int> out;
  for (int a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) out.push_back(a);
  return out;
}

std::vector<EigenType> eigen_types(int m) {
  auto u = units_mod(m);
  std::vector<EigenType> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i; j < u.size(); ++j) out.push_back(EigenType{m, u[i], u[j]});
  return out;
}

bool is_square_power(int n, int k) { return n % 2 == 1 || k % 2 == 0; }

}  // namespace

CyclotomicNumber holomorphic_sum(const FixedConfig& config, int k) {
  int n = config.n;
  if (positive_mod(k, n) == 0) throw Error(Errc::IdentityPower, "sigma^" + std::to_string(k) + " is the identity");
  k = static_cast<int>(positive_mod(k, n));
  CyclotomicNumber total(0, n);
  for (const auto& s : config.strata) {
    if (k % s.orbit_size != 0) continue;
    int j = k / s.orbit_size;  // sigma^k = (sigma^orbit_size)^j
    int scale = n / s.stabilizer;
    for (const auto& t : s.orbits)
      total = total + CyclotomicNumber(s.orbit_size, n) *
                          lefschetz_term(n, static_cast<long long>(scale) * j * t.a,
                                         static_cast<long long>(scale) * j * t.b);
  }
  return total;
}

Rational zhang_coefficient(int p, int i) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (i % p == 0) throw Error(Errc::NotCoprime, "index divisible by p");
  // 1/(1 - z^j) are the Galois conjugates of 1/(1 - z)
  CyclotomicNumber base = (CyclotomicNumber(1, p) - root_of_unity(p, 1)).inverse();
  std::vector<CyclotomicNumber> inv(p);
  for (int j = 1; j < p; ++j) inv[j] = base.galois(j);
  CyclotomicNumber sum(0, p);
  for (int j = 1; j < p; ++j) sum = sum + inv[j] * inv[positive_mod(static_cast<long long>(i) * j, p)];
  return as_rational(sum) / (p - 1);
}

std::vector<std::vector<int>> zhang_solutions(int p, int num_points) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  std::vector<Rational> a;
  for (int i = 1; i < p; ++i) a.push_back(zhang_coefficient(p, i));
  std::vector<std::vector<int>> out;
  std::vector<int> r(p - 1, 0);
  std::function<void(std::size_t, int, Rational)> rec = [&](std::size_t idx, int left, Rational acc) {
    if (idx + 1 == r.size()) {
      r[idx] = left;
      if (acc + left * a[idx] == 1) out.push_back(r);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      r[idx] = c;
      rec(idx + 1, left - c, acc + c * a[idx]);
    }
    r[idx] = 0;
  };
  rec(0, num_points, Rational(0));
  std::sort(out.begin(), out.end());
  return out;
}

SingularConfiguration zhang_configuration(int p, const std::vector<int>& r) {
  SingularConfiguration cfg;
  for (std::size_t i = 0; i < r.size(); ++i) cfg.add(canonical(p, static_cast<int>(i) + 1), r[i]);
  return cfg;
}

std::vector<FixedConfig> enumerate_cyclic_raw(int n) {
  if (n < 2 || n > 12) throw Error(Errc::OutOfRange, "cyclic order must be in 2..12");

  struct Layer {
    int stabilizer;
    int orbit_size;
    std::vector<EigenType> types;
    // per type, the contribution to the Lefschetz sum of sigma^k, k = 1..n-1
    std::vector<std::vector<std::complex<double>>> approx;
  };
  std::vector<Layer> layers;
  for (int m : divisors(n)) {
    if (m < 2) continue;
    Layer L{m, n / m, eigen_types(m), {}};
    for (const auto& t : L.types) {
      std::vector<std::complex<double>> v(n, 0.0);
      for (int k = 1; k < n; ++k) {
        if (k % L.orbit_size != 0) continue;
        long long j = k / L.orbit_size;
        long long scale = n / m;
        v[k] = static_cast<double>(L.orbit_size) * lefschetz_term_approx(n, scale * j * t.a, scale * j * t.b);
      }
      L.approx.push_back(std::move(v));
    }
    layers.push_back(std::move(L));
  }

  // Orbit counts per layer subject to |Fix(sigma^k)| in {2, 4}.
  std::vector<std::vector<int>> count_vectors;
  std::vector<int> counts(layers.size(), 0);
  std::function<void(std::size_t)> choose_counts = [&](std::size_t idx) {
    if (idx == layers.size()) {
      for (int k = 1; k < n; ++k) {
        int f = 0;
        for (std::size_t i = 0; i < layers.size(); ++i)
          if (k % layers[i].orbit_size == 0) f += layers[i].orbit_size * counts[i];
        if (f != 2 && f != 4) return;
        if (is_square_power(n, k) && f != 4) return;
      }
      count_vectors.push_back(counts);
      return;
    }
    for (int c = 0; c * layers[idx].orbit_size <= 4; ++c) {
      counts[idx] = c;
      choose_counts(idx + 1);
    }
    counts[idx] = 0;
  };
  choose_counts(0);

  std::vector<FixedConfig> out;
  for (const auto& cv : count_vectors) {
    // multisets of types, layer by layer, as index lists
    std::vector<std::vector<int>> picks(layers.size());
    std::vector<std::complex<double>> acc(n, 0.0);
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t layer, int remaining, int min_type) {
      if (layer == layers.size()) {
        for (int k = 1; k < n; ++k)
          if (std::abs(acc[k] - 1.0) > 1e-7) return;
        FixedConfig cfg;
        cfg.n = n;
        for (std::size_t i = 0; i < layers.size(); ++i) {
          if (picks[i].empty()) continue;
          Stratum s{layers[i].stabilizer, layers[i].orbit_size, {}};
          for (int t : picks[i]) s.orbits.push_back(layers[i].types[t]);
          cfg.strata.push_back(std::move(s));
        }
        // exact re-verification
        for (int k = 1; k < n; ++k)
          if (!(holomorphic_sum(cfg, k) == CyclotomicNumber(1, n))) return;
        out.push_back(std::move(cfg));
        return;
      }
      if (remaining == 0) {
        std::size_t next = layer + 1;
        rec(next, next < layers.size() ? cv[next] : 0, 0);
        return;
      }
      const Layer& L = layers[layer];
      for (int t = min_type; t < static_cast<int>(L.types.size()); ++t) {
        picks[layer].push_back(t);
        for (int k = 1; k < n; ++k) acc[k] += L.approx[t][k];
        rec(layer, remaining - 1, t);
        for (int k = 1; k < n; ++k) acc[k] -= L.approx[t][k];
        picks[layer].pop_back();
      }
    };
    rec(0, cv[0], 0);
  }
  return out;
}

std::vector<SingularConfiguration> enumerate_cyclic(int n) {
  std::set<SingularConfiguration> seen;
  for (const auto& raw : enumerate_cyclic_raw(n)) seen.insert(raw.singularities());
  return {seen.begin(), seen.end()};
}

bool is_reflection(int n, int a, int b) {
  bool a_trivial = positive_mod(a, n) == 0;
  bool b_trivial = positive_mod(b, n) == 0;
  return a_trivial != b_trivial;
}

namespace {

// Diagonal representations of (Z/p)^2 by two characters; returns
// (number faithful, number faithful with a reflection).
std::pair<int, int> scan_elementary_reps(int p) {
  int faithful = 0, reflective = 0;
  for (int u1 = 0; u1 < p; ++u1)
    for (int v1 = 0; v1 < p; ++v1)
      for (int u2 = 0; u2 < p; ++u2)
        for (int v2 = 0; v2 < p; ++v2) {
          bool is_faithful = true, has_refl = false;
          for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y) {
              if (x == 0 && y == 0) continue;
              int e1 = (u1 * x + v1 * y) % p;
              int e2 = (u2 * x + v2 * y) % p;
              if (e1 == 0 && e2 == 0) is_faithful = false;
              if (is_reflection(p, e1, e2)) has_refl = true;
            }
          if (!is_faithful) continue;
          ++faithful;
          if (has_refl) ++reflective;
        }
  return {faithful, reflective};
}

}  // namespace

KleinFourResult enumerate_klein_four() {
  KleinFourResult r;
  auto [faithful, reflective] = scan_elementary_reps(2);
  r.faithful_representations = faithful;
  r.with_reflection = reflective;
  if (faithful != reflective)
    throw Error(Errc::InconsistentScenario, "a faithful representation of (Z/2Z)^2 without reflection");
  // No common fixed point, so every stabilizer is one of the three involutions:
  // each has 4 fixed points, forming orbits of size 2.
  int involutions = 3;
  r.census[2] = involutions * 4;
  r.config.add(canonical(2, 1), involutions * 4 / 2);
  return r;
}

DihedralResult enumerate_dihedral(int m) {
  if (m != 4 && m != 8)
    throw Error(Errc::UnsupportedGroup, "dihedral groups with rotation order " + std::to_string(m) + " are not covered");
  DihedralResult result;
  result.m = m;
  int order = 2 * m;

  std::map<SingularConfiguration, std::vector<FixedConfig>> by_config;
  for (auto& raw : enumerate_cyclic_raw(m)) by_config[raw.singularities()].push_back(raw);

  std::set<SingularConfiguration> accepted;
  for (const auto& [rot_cfg, raws] : by_config) {
    DihedralBranch br;
    br.rotation_config = rot_cfg;
    const FixedConfig& any = raws.front();
    br.rotation_fixed_points = any.fixed_count(1);
    // Reflections: 4 fixed points each (Lefschetz for an involution); a point
    // fixed by a reflection and a rotation would have a non-cyclic stabilizer,
    // whose faithful representations contain reflections.
    br.census = any.census();
    br.census[2] += m * 4;
    Rational sum = 4;
    for (const auto& [stab, count] : br.census) sum += (stab - 1) * count;
    br.euler = sum / order;
    if (!is_integer(br.euler)) {
      br.reason = "e(S/G) = " + to_string(br.euler) + " is not an integer";
      result.branches.push_back(std::move(br));
      continue;
    }
    // The reflection a maps a <t>-orbit of type (x, y) to one of type (-x, -y)
    // and never to itself; orbits must pair up.
    std::optional<SingularConfiguration> paired;
    for (const auto& raw : raws) {
      SingularConfiguration cfg;
      bool ok = true;
      for (const auto& s : raw.strata) {
        std::map<EigenType, int> mult;
        for (const auto& t : s.orbits) mult[t]++;
        for (const auto& [t, c] : mult) {
          EigenType neg = EigenType::make(t.n, -t.a, -t.b);
          if (neg == t) {
            if (c % 2 != 0) ok = false;
            else cfg.add(t.singularity(), c / 2);
          } else if (mult.count(neg) == 0 || mult.at(neg) != c) {
            ok = false;
          } else if (t < neg) {
            cfg.add(t.singularity(), c);
          }
        }
      }
      if (!ok) continue;
      // reflection points: 4m points in orbits of size m
      cfg.add(canonical(2, 1), 4);
      paired = cfg;
      break;
    }
    if (!paired) {
      br.reason = "rotation orbits cannot be paired by the reflections";
      result.branches.push_back(std::move(br));
      continue;
    }
    br.accepted = true;
    br.quotient_config = paired;
    accepted.insert(*paired);
    result.branches.push_back(std::move(br));
  }
  result.configs.assign(accepted.begin(), accepted.end());
  return result;
}

ImpossibilityReport impossibility(int p) {
  if (p != 3 && p != 5) throw Error(Errc::UnsupportedGroup, "only (Z/3Z)^2 and (Z/5Z)^2 are covered");
  ImpossibilityReport r;
  r.p = p;
  // sigma_1 has odd order, so it is a square and has 4 fixed points; sigma_2
  // permutes them in orbits of size 1 or p.
  for (int free = 0; free * p <= 4; ++free) r.orbit_splits.emplace_back(4 - free * p, free);
  r.common_fixed_point_forced =
      std::all_of(r.orbit_splits.begin(), r.orbit_splits.end(), [](const auto& s) { return s.first > 0; });
  r.steps.push_back("Fix(sigma_1) has 4 points, split by sigma_2 into orbits of size 1 or " + std::to_string(p));
  std::string splits;
  for (const auto& [fixed, free] : r.orbit_splits)
    splits += (splits.empty() ? "" : ", ") + std::to_string(fixed) + " fixed + " + std::to_string(free) + " orbit(s)";
  r.steps.push_back("possible splits: " + splits);
  if (r.common_fixed_point_forced) r.steps.push_back("every split leaves a point fixed by the whole group");

  auto [faithful, reflective] = scan_elementary_reps(p);
  r.faithful_representations = faithful;
  r.with_reflection = reflective;
  r.steps.push_back(std::to_string(reflective) + " of " + std::to_string(faithful) +
                    " faithful tangent representations contain a reflection");
  r.impossible = r.common_fixed_point_forced && faithful > 0 && faithful == reflective;
  r.steps.push_back(r.impossible ? "a reflection fixes a curve through the common point: impossible"
                                 : "no contradiction found");
  return r;
}

}  // namespace fq

#include "fq/quatalg.hpp"

#include "fq/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fq {

// ---------------------------------------------------------------------------
// GroupDescriptor

GroupDescriptor GroupDescriptor::cyclic(int n) {
  if (n < 1) throw Error(Errc::OutOfRange, "cyclic group order must be >= 1");
  GroupDescriptor g;
  g.kind = Kind::cyclic;
  g.n = n;
  return g;
}

GroupDescriptor GroupDescriptor::dihedral(int n) {
  if (n < 1) throw Error(Errc::OutOfRange, "dihedral parameter must be >= 1");
  if (n == 1) return cyclic(2);
  if (n == 2) return klein_four();
  GroupDescriptor g;
  g.kind = Kind::dihedral;
  g.n = n;
  return g;
}

GroupDescriptor GroupDescriptor::klein_four() {
  GroupDescriptor g;
  g.kind = Kind::klein_four;
  g.n = 2;
  return g;
}

GroupDescriptor GroupDescriptor::elem_abelian_2(int rank) {
  if (rank < 0) throw Error(Errc::OutOfRange, "negative rank");
  if (rank == 0) return cyclic(1);
  if (rank == 1) return cyclic(2);
  if (rank == 2) return klein_four();
  GroupDescriptor g;
  g.kind = Kind::elem_abelian_2;
  g.n = rank;
  return g;
}

GroupDescriptor GroupDescriptor::extension(int c, std::optional<int> cyclic_subgroup) {
  GroupDescriptor g;
  g.kind = Kind::extension;
  g.n = c;
  g.resolved = false;
  g.cyclic_subgroup = cyclic_subgroup;
  return g;
}

int GroupDescriptor::order() const {
  switch (kind) {
    case Kind::cyclic: return n;
    case Kind::dihedral: return 2 * n;
    case Kind::klein_four: return 4;
    case Kind::elem_abelian_2: return 1 << n;
    case Kind::extension: return 4 * n;
  }
  return 0;
}

std::string_view GroupDescriptor::kind_name() const {
  switch (kind) {
    case Kind::cyclic: return "cyclic";
    case Kind::dihedral: return "dihedral";
    case Kind::klein_four: return "klein_four";
    case Kind::elem_abelian_2: return "elem_abelian_2";
    case Kind::extension: return "extension";
  }
  return "?";
}

std::string GroupDescriptor::name() const {
  switch (kind) {
    case Kind::cyclic: return n == 1 ? "1" : "Z/" + std::to_string(n) + "Z";
    case Kind::dihedral: return "D" + std::to_string(n);
    case Kind::klein_four: return "(Z/2Z)^2";
    case Kind::elem_abelian_2: return "(Z/2Z)^" + std::to_string(n);
    case Kind::extension: {
      std::string s = "Z/" + std::to_string(n) + "Z.(Z/2Z)^2";
      if (cyclic_subgroup) s += " containing Z/" + std::to_string(*cyclic_subgroup) + "Z";
      return s;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// algebras

std::string QuaternionData::name() const {
  std::string s = "B(" + field.name() + ", ";
  if (ramified.empty()) s += "1";
  for (std::size_t i = 0; i < ramified.size(); ++i) s += (i ? "*" : "") + ramified[i].label;
  return s + ")";
}

QuaternionData make_algebra(const QuadraticField& k, std::vector<PrimeSplit> primes) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      if (primes[i].p != primes[j].p) continue;
      bool distinct_split = primes[i].kind == SplitKind::split && primes[i].sqrt_residue != primes[j].sqrt_residue;
      if (!distinct_split) throw Error(Errc::DuplicatePrime, "prime " + primes[i].label + " listed twice");
    }
  }
  if (primes.size() % 2 != 0)
    throw Error(Errc::OddRamification, "a quaternion algebra ramified at no infinite place needs an even number of finite "
                                       "ramified primes, got " + std::to_string(primes.size()));
  return QuaternionData{k, std::move(primes)};
}

bool embeds_quadratic(const QuaternionData& B, const QFElement& delta) {
  if (sqrt_in_field(delta))
    throw Error(Errc::PerfectSquareInput, delta.to_string() + " is a square in " + B.field.name());
  return std::none_of(B.ramified.begin(), B.ramified.end(),
                      [&](const PrimeSplit& P) { return is_local_square(B.field, delta, P); });
}

std::optional<QFElement> torsion_trace(const QuadraticField& k, int m) {
  switch (m) {
    case 2: return QFElement(k, 0);
    case 3: return QFElement(k, 1);
    case 4:
      if (k.d() == 2) return QFElement(k, 0, 1);
      return std::nullopt;
    case 5:
      if (k.d() == 5) return QFElement(k, make_rational(1, 2), make_rational(1, 2));
      return std::nullopt;
    case 6:
      if (k.d() == 3) return QFElement(k, 0, 1);
      return std::nullopt;
    default:
      throw Error(Errc::UnsupportedOrder, "torsion order " + std::to_string(m) + " is outside 2..6");
  }
}

bool torsion_order_exists(const QuaternionData& B, int m) {
  auto t = torsion_trace(B.field, m);
  if (!t) return false;
  return embeds_quadratic(B, *t * *t - QFElement(B.field, 4));
}

std::vector<int> torsion_orders(const QuaternionData& B) {
  std::vector<int> out;
  for (int m = 2; m <= 6; ++m)
    if (torsion_order_exists(B, m)) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// F_{q^2} by hand

namespace {

using Poly = std::vector<long long>;  // coefficients mod p, lowest first

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, long long p) {
  poly_trim(a);
  long long inv_lead = mod_inverse(m.back(), p);
  while (a.size() >= m.size()) {
    long long c = a.back() * inv_lead % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = positive_mod(a[shift + i] - c * m[i], p);
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return poly_mod(out, m, p);
}

Poly poly_powmod(Poly base, long long e, const Poly& m, long long p) {
  Poly result{1};
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly decode(long long index, int degree, long long p) {
  Poly f(degree);
  for (int i = 0; i < degree; ++i) {
    f[i] = index % p;
    index /= p;
  }
  poly_trim(f);
  return f;
}

bool irreducible(const Poly& f, long long p) {
  int n = static_cast<int>(f.size()) - 1;
  for (int deg = 1; deg <= n / 2; ++deg) {
    long long count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly g = decode(idx, deg, p);
      g.resize(deg + 1, 0);
      g[deg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly first_irreducible(int degree, long long p) {
  long long count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (long long idx = 0; idx < count; ++idx) {
    Poly f = decode(idx, degree, p);
    f.resize(degree + 1, 0);
    f[degree] = 1;
    if (irreducible(f, p)) return f;
  }
  throw Error(Errc::OutOfRange, "no irreducible polynomial found");  // cannot happen
}

std::string poly_string(const Poly& f) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) out << " + ";
    if (f[i] != 1 || i == 0) out << f[i];
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

}  // namespace

NormKernel norm_kernel_by_enumeration(long long q) {
  auto pp = prime_power(q);
  if (!pp) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  auto [p, f] = *pp;
  int degree = 2 * f;
  Poly modulus = first_irreducible(degree, p);
  long long size = q * q;

  NormKernel out;
  out.q = q;
  out.modulus = poly_string(modulus);
  std::vector<Poly> kernel;
  for (long long idx = 1; idx < size; ++idx) {
    Poly x = decode(idx, degree, p);
    if (poly_powmod(x, q + 1, modulus, p) == Poly{1}) kernel.push_back(x);
  }
  out.order = static_cast<long long>(kernel.size());
  // Cyclic iff some element has order equal to the group order.
  for (const Poly& x : kernel) {
    Poly y = x;
    long long ord = 1;
    while (y != Poly{1}) {
      y = poly_mulmod(y, x, modulus, p);
      ++ord;
    }
    if (ord == out.order) {
      out.cyclic = true;
      break;
    }
  }
  return out;
}

GroupDescriptor riehm_norm1_quotient(long long q) {
  NormKernel k = norm_kernel_by_enumeration(q);
  if (!k.cyclic || k.order != q + 1)
    throw Error(Errc::OutOfRange, "norm kernel of F_" + std::to_string(q * q) + " is not cyclic of order q+1");
  return GroupDescriptor::cyclic(static_cast<int>(k.order));
}

long long gamma1_quotient_order(long long q, long long p) {
  auto pp = prime_power(q);
  if (!pp || pp->first != p)
    throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a power of " + std::to_string(p));
  // -1 is trivial modulo P exactly in residue characteristic 2.
  return p == 2 ? q + 1 : (q + 1) / 2;
}

Rational shimizu_euler(const QuaternionData& B) {
  Rational e = 2 * zeta_minus_one(B.field);
  for (const auto& P : B.ramified) e *= (P.q - 1);
  return e;
}

// ---------------------------------------------------------------------------
// subgroups

LevelFactor LevelFactor::principal(const PrimeSplit& p) {
  LevelFactor f;
  f.kind = Kind::principal;
  f.prime = p;
  return f;
}

LevelFactor LevelFactor::intermediate(const PrimeSplit& p, int image_order) {
  LevelFactor f;
  f.kind = Kind::intermediate;
  f.prime = p;
  f.image_order = image_order;
  return f;
}

LevelFactor LevelFactor::normalizer_extension(int degree) {
  LevelFactor f;
  f.kind = Kind::normalizer_extension;
  f.degree = degree;
  return f;
}

SubgroupSpec make_subgroup(const QuaternionData& B, std::vector<LevelFactor> level) {
  SubgroupSpec spec;
  long long quotient = 1;
  bool odd_level = false;
  Rational index = 1;
  std::vector<std::string> parts;
  for (const auto& f : level) {
    if (f.kind == LevelFactor::Kind::normalizer_extension) {
      if (f.degree < 1) throw Error(Errc::OutOfRange, "extension degree must be >= 1");
      index /= f.degree;
      parts.push_back("ext" + std::to_string(f.degree));
      continue;
    }
    if (!f.prime) throw Error(Errc::UsageError, "congruence level without a prime");
    const PrimeSplit& P = *f.prime;
    if (std::find(B.ramified.begin(), B.ramified.end(), P) == B.ramified.end())
      throw Error(Errc::OutOfRange, "level prime " + P.label + " is not ramified in " + B.name());
    quotient *= P.q + 1;
    odd_level = odd_level || P.p != 2;
    if (f.kind == LevelFactor::Kind::intermediate) {
      long long full = gamma1_quotient_order(P.q, P.p);
      if (f.image_order < 1 || full % f.image_order != 0)
        throw Error(Errc::OutOfRange, "image order " + std::to_string(f.image_order) + " does not divide " +
                                          std::to_string(full));
      index /= f.image_order;
      parts.push_back(P.label + "[h=" + std::to_string(f.image_order) + "]");
    } else {
      parts.push_back(P.label);
    }
  }
  // Gamma^1 = O^1/{+-1}; -1 leaves the kernel as soon as one level prime is odd.
  if (odd_level) quotient /= 2;
  index *= quotient;
  spec.level = std::move(level);
  spec.index_in_base = index;
  if (parts.empty()) {
    spec.name = "Gamma1";
  } else {
    spec.name = "Gamma1(";
    for (std::size_t i = 0; i < parts.size(); ++i) spec.name += (i ? "," : "") + parts[i];
    spec.name += ")";
  }
  return spec;
}

Rational euler_of_subgroup(const Rational& e, const SubgroupSpec& spec) {
  if (spec.index_in_base <= 0) throw Error(Errc::OutOfRange, "index must be positive");
  return e * spec.index_in_base;
}

namespace {

bool congruent(const QFElement& x, const QFElement& y, const PrimeSplit& P) {
  QFElement diff = x - y;
  return diff.is_zero() || valuation(diff, P) >= 1;
}

}  // namespace

TorsionCheck torsion_free_check(const QuaternionData& B, const SubgroupSpec& spec) {
  TorsionCheck out;
  out.torsion_free = true;
  const auto& k = B.field;
  bool extension = std::any_of(spec.level.begin(), spec.level.end(), [](const LevelFactor& f) {
    return f.kind == LevelFactor::Kind::normalizer_extension;
  });

  for (int m : torsion_orders(B)) {
    if (extension || spec.level.empty()) {
      out.torsion_free = false;
      out.reasons.push_back("order " + std::to_string(m) + " lies in Gamma1 itself");
      continue;
    }
    QFElement t = *torsion_trace(k, m);
    std::vector<QFElement> traces{t, -t, t.conjugate(), -t.conjugate()};
    std::string why;
    for (const auto& f : spec.level) {
      const PrimeSplit& P = *f.prime;
      if (f.kind == LevelFactor::Kind::intermediate && std::gcd(m, f.image_order) != 1) continue;
      std::string via = f.kind == LevelFactor::Kind::intermediate
                            ? "image in a group of order " + std::to_string(f.image_order) + " is trivial, so "
                            : "";
      if (std::gcd(static_cast<long long>(m), P.p) == 1) {
        why = via + "the kernel at " + P.label + " is pro-" + std::to_string(P.p);
        break;
      }
      bool hits = std::any_of(traces.begin(), traces.end(), [&](const QFElement& tr) {
        return congruent(tr, QFElement(k, 2), P) || congruent(tr, QFElement(k, -2), P);
      });
      if (!hits) {
        why = via + "no trace +-" + t.to_string() + " is +-2 mod " + P.label;
        break;
      }
    }
    if (why.empty()) {
      out.torsion_free = false;
      out.reasons.push_back("order " + std::to_string(m) + " is not excluded");
    } else {
      out.reasons.push_back("order " + std::to_string(m) + " excluded: " + why);
    }
  }
  if (extension && out.torsion_free) {
    out.relies_on_record = true;
    out.reasons.push_back("Gamma1 is torsion-free; elements outside Gamma1 are covered by the recorded criterion");
  }
  return out;
}

QFElement nrd_one_plus_torsion(const QuadraticField& k, int m) {
  auto t = torsion_trace(k, m);
  if (!t) throw Error(Errc::UnsupportedOrder, "t_" + std::to_string(m) + " is not in " + k.name());
  return QFElement(k, 2) + *t;
}

GroupDescriptor assemble_automorphism_group(int g_order, bool inverting_involution_outside) {
  if (g_order < 2) throw Error(Errc::OutOfRange, "g must have order >= 2");
  return inverting_involution_outside ? GroupDescriptor::dihedral(g_order) : GroupDescriptor::cyclic(g_order);
}

NormalizerRank normalizer_quotient_rank(const QuaternionData& B) {
  return NormalizerRank{static_cast<int>(B.ramified.size()), true};
}

}  // namespace fq

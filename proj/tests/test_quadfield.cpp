#include "doctest.h"

#include "fq/error.hpp"
#include "fq/quadfield.hpp"

#include <random>

using namespace fq;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::UsageError;
}

QFElement el(const QuadraticField& k, const char* text) { return parse_element(k, text); }

// Classical description of Q_p squares, used for rational delta.
bool qp_square(const Rational& x, long long p) {
  int v = padic_valuation(x, p);
  if (v % 2 != 0) return false;
  Rational u = x;
  for (int i = 0; i < std::abs(v); ++i) u = v > 0 ? Rational(u / p) : Rational(u * p);
  if (p == 2) return residue(u, 8) == 1;
  return mod_pow(residue(u, p), (p - 1) / 2, p) == 1;
}

// Rational delta is a square in k_P iff it is a square in Q_p, or when k_P is a
// quadratic extension of Q_p iff delta or delta/d is a Q_p square.
bool rational_local_square_oracle(const QuadraticField& k, const Rational& delta, const PrimeSplit& P) {
  if (qp_square(delta, P.p)) return true;
  if (P.kind == SplitKind::split) return false;
  return qp_square(delta / Rational(k.d()), P.p);
}

}  // namespace

TEST_CASE("make_field") {
  CHECK(make_field(2).discriminant() == 8);
  CHECK(make_field(5).discriminant() == 5);
  CHECK(make_field(3).discriminant() == 12);
  CHECK(make_field(13).discriminant() == 13);
  CHECK(code_of([] { make_field(12); }) == Errc::NotSquarefree);
  CHECK(code_of([] { make_field(1); }) == Errc::OutOfRange);
  CHECK(code_of([] { make_field(-5); }) == Errc::OutOfRange);
}

TEST_CASE("split types from the worked examples") {
  auto k2 = make_field(2), k5 = make_field(5), k13 = make_field(13), k3 = make_field(3);
  auto p3 = split_type(k2, 3);
  CHECK(p3.kind == SplitKind::inert);
  CHECK(p3.q == 9);
  CHECK(split_type(k2, 7).kind == SplitKind::split);
  CHECK(split_type(k2, 2).kind == SplitKind::ramified);
  CHECK(split_type(k2, 2).q == 2);
  CHECK(split_type(k2, 5).kind == SplitKind::inert);
  CHECK(split_type(k5, 2).kind == SplitKind::inert);
  CHECK(split_type(k5, 2).q == 4);
  CHECK(split_type(k5, 11).kind == SplitKind::split);
  CHECK(split_type(k5, 5).kind == SplitKind::ramified);
  CHECK(split_type(k13, 2).kind == SplitKind::inert);
  CHECK(split_type(k13, 3).kind == SplitKind::split);
  CHECK(split_type(k3, 2).kind == SplitKind::ramified);
  CHECK(split_type(k3, 3).kind == SplitKind::ramified);
  CHECK(code_of([&] { split_type(k2, 9); }) == Errc::NotPrime);
  CHECK(split_type(make_field(17), 2).kind == SplitKind::split);
}

TEST_CASE("splitting trichotomy for p <= 100") {
  for (long long d : {2, 3, 5, 13}) {
    auto k = make_field(d);
    for (long long p = 2; p <= 100; ++p) {
      if (!is_prime(p)) continue;
      auto s = split_type(k, p);
      CHECK((s.kind == SplitKind::ramified) == (k.discriminant() % p == 0));
      CHECK(s.q == (s.kind == SplitKind::inert ? p * p : p));
      // Independent count of roots of x^2 - D mod p for odd p.
      if (p != 2 && k.discriminant() % p != 0) {
        int roots = 0;
        for (long long x = 0; x < p; ++x) roots += (x * x - k.discriminant()) % p == 0;
        CHECK((roots == 2) == (s.kind == SplitKind::split));
      }
    }
  }
}

TEST_CASE("element operations") {
  auto k5 = make_field(5), k3 = make_field(3);
  auto g = el(k5, "(5+sqrt5)/2");
  CHECK(g.is_totally_positive());
  CHECK(g.norm() == 5);
  CHECK(g.trace() == 5);
  auto u = el(k3, "2+sqrt3");
  CHECK(u.is_totally_positive());
  CHECK(u.norm() == 1);
  CHECK_FALSE(el(k3, "-1").is_totally_positive());
  CHECK_FALSE(el(k3, "1-sqrt3").is_totally_positive());
  CHECK_FALSE(el(k3, "2-2*sqrt3").is_totally_positive());
  CHECK(el(k3, "2-sqrt3").is_totally_positive());
  CHECK(g.conjugate().conjugate() == g);
  CHECK(el(k5, "(1+sqrt5)/2").is_integral());
  CHECK_FALSE(el(k5, "(1+2sqrt5)/2").is_integral());
  CHECK_FALSE(el(make_field(2), "(1+sqrt2)/2").is_integral());
  CHECK(g.to_string() == "(5+sqrt5)/2");
  CHECK(el(k5, "(-5+sqrt5)/2").to_string() == "(-5+sqrt5)/2");
  CHECK(el(make_field(2), "-(3+sqrt2)").to_string() == "-3-sqrt2");
  CHECK(el(make_field(2), "3 sqrt(2)/4").to_string() == "3*sqrt2/4");
  CHECK(code_of([&] { el(k5, "sqrt3"); }) == Errc::ParseError);
  CHECK(code_of([&] { el(k5, "1/0"); }) == Errc::DivisionByZero);
}

TEST_CASE("ring properties on random elements") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-9, 9), den(1, 4);
  for (long long d : {2, 3, 5, 13}) {
    auto k = make_field(d);
    auto rnd = [&] { return QFElement(k, make_rational(c(rng), den(rng)), make_rational(c(rng), den(rng))); };
    for (int t = 0; t < 40; ++t) {
      auto x = rnd(), y = rnd();
      CHECK((x * y).norm() == x.norm() * y.norm());
      CHECK((x + y).trace() == x.trace() + y.trace());
      CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
      CHECK((x + y).conjugate() == x.conjugate() + y.conjugate());
      CHECK(parse_element(k, x.to_string()) == x);
      if (!y.is_zero()) CHECK((x / y) * y == x);
      auto sq = x * x;
      if (!x.is_zero()) {
        auto r = sqrt_in_field(sq);
        REQUIRE(r.has_value());
        CHECK(*r * *r == sq);
      }
    }
  }
}

TEST_CASE("local squares from the worked examples") {
  auto k2 = make_field(2), k5 = make_field(5);
  CHECK(is_local_square(k2, el(k2, "-1"), split_type(k2, 3)));
  CHECK_FALSE(is_local_square(k5, el(k5, "-2"), split_type(k5, 5)));
  CHECK_FALSE(is_local_square(k5, el(k5, "-2"), split_type(k5, 2)));
  CHECK(code_of([&] { is_local_square(k2, el(k2, "0"), split_type(k2, 3)); }) == Errc::ZeroInput);
  CHECK(code_of([&] { is_local_square(k2, el(k2, "1"), split_type(k2, 3)); }) == Errc::PerfectSquareInput);
  CHECK(code_of([&] { is_local_square(k2, el(k2, "3+2sqrt2"), split_type(k2, 3)); }) == Errc::PerfectSquareInput);
  // A unit that is a residue-field square: -1 at the prime above 5 in Q(sqrt5).
  CHECK(is_local_square(k5, el(k5, "-1"), split_type(k5, 5)));
}

TEST_CASE("split primes and generators") {
  auto k2 = make_field(2);
  auto pi7 = el(k2, "3+sqrt2");
  auto P = prime_of_generator(k2, pi7);
  CHECK(P.p == 7);
  CHECK(P.sqrt_residue == 4);
  CHECK(P.label == "p7'");
  CHECK(valuation(pi7, P) == 1);
  CHECK(valuation(pi7, conjugate_prime(k2, P)) == 0);
  CHECK(valuation(el(k2, "49/3"), P) == 2);
  CHECK(valuation(el(k2, "1/(3+sqrt2)"), P) == -1);
  // The choice of prime above 7 matters for -pi7.
  CHECK_FALSE(is_local_square(k2, -pi7, P));
  CHECK(is_local_square(k2, -pi7, conjugate_prime(k2, P)));
  CHECK(code_of([&] { split_type(k2, 7, 2); }) == Errc::OutOfRange);
  CHECK(code_of([&] { split_type(k2, 3, 1); }) == Errc::UsageError);

  auto k17 = make_field(17);
  auto P2 = split_type(k17, 2);
  auto g = el(k17, "(3+sqrt17)/2");  // norm -2
  auto G = prime_of_generator(k17, g);
  CHECK(valuation(g, G) == 1);
  CHECK(valuation(g, conjugate_prime(k17, G)) == 0);
  CHECK(valuation(el(k17, "8"), P2) == 3);
}

TEST_CASE("local squares agree with the Q_p oracle on rational delta") {
  for (long long d : {2, 3, 5, 13, 17, 7}) {
    auto k = make_field(d);
    for (long long p : {2, 3, 5, 7, 11, 13, 17}) {
      auto P = split_type(k, p);
      for (long long num = -40; num <= 40; ++num) {
        if (num == 0) continue;
        for (long long den : {1, 2, 3, 9}) {
          QFElement delta(k, make_rational(num, den));
          if (sqrt_in_field(delta)) continue;
          INFO("d=", d, " p=", p, " delta=", num, "/", den);
          CHECK(is_local_square(k, delta, P) == rational_local_square_oracle(k, delta.a(), P));
          if (P.kind == SplitKind::split)
            CHECK(is_local_square(k, delta, conjugate_prime(k, P)) == is_local_square(k, delta, P));
        }
      }
    }
  }
}

TEST_CASE("odd residue characteristic agrees with brute-force residue squares") {
  for (long long d : {2, 3, 5, 13}) {
    auto k = make_field(d);
    bool one_mod_four = d % 4 == 1;
    for (long long p : {3, 5, 7, 11, 13}) {
      auto P = split_type(k, p);
      if (P.kind == SplitKind::ramified) continue;
      for (long long a = -6; a <= 6; ++a) {
        for (long long b = -6; b <= 6; ++b) {
          if (b == 0) continue;
          QFElement delta(k, Rational(a), Rational(b));
          if (valuation(delta, P) != 0 || sqrt_in_field(delta)) continue;
          bool found = false;
          for (long long x = 0; x < p && !found; ++x)
            for (long long y = 0; y < p && !found; ++y) {
              QFElement z = one_mod_four ? QFElement(k, make_rational(2 * x + y, 2), make_rational(y, 2))
                                         : QFElement(k, Rational(x), Rational(y));
              QFElement diff = z * z - delta;
              found = diff.is_zero() || valuation(diff, P) >= 1;
            }
          INFO("d=", d, " p=", p, " delta=", delta.to_string());
          CHECK(is_local_square(k, delta, P) == found);
        }
      }
    }
  }
}

TEST_CASE("square-class invariance") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-7, 7);
  for (long long d : {2, 3, 5, 13}) {
    auto k = make_field(d);
    for (long long p : {2, 3, 5, 7, 11, 13}) {
      auto P = split_type(k, p);
      for (int t = 0; t < 25; ++t) {
        QFElement delta(k, Rational(c(rng)), Rational(c(rng)));
        QFElement s(k, Rational(c(rng)), make_rational(c(rng), 1 + (t % 2)));
        if (delta.is_zero() || s.is_zero() || sqrt_in_field(delta)) continue;
        CHECK(is_local_square(k, delta * s * s, P) == is_local_square(k, delta, P));
      }
    }
  }
}

TEST_CASE("zeta at -1") {
  CHECK(zeta_minus_one(make_field(5)) == make_rational(1, 30));
  CHECK(zeta_minus_one(make_field(2)) == make_rational(1, 12));
  CHECK(zeta_minus_one(make_field(3)) == make_rational(1, 6));
  CHECK(zeta_minus_one(make_field(13)) == make_rational(1, 6));
  CHECK(2 * zeta_minus_one(make_field(5)) * 3 * 10 == 2);
  for (long long d = 2; d <= 50; ++d) {
    bool squarefree = true;
    for (long long f = 2; f * f <= d; ++f) squarefree = squarefree && d % (f * f) != 0;
    if (squarefree) CHECK(zeta_minus_one(make_field(d)) > 0);
  }
}

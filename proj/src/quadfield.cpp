#include "fq/quadfield.hpp"

#include "fq/error.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <tuple>

namespace fq {

namespace mp = boost::multiprecision;

QuadraticField make_field(long long d) {
  if (d <= 1) throw Error(Errc::OutOfRange, "real quadratic field needs d > 1, got " + std::to_string(d));
  for (long long f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) throw Error(Errc::NotSquarefree, std::to_string(d) + " is not squarefree");
  long long disc = positive_mod(d, 4) == 1 ? d : 4 * d;
  return QuadraticField(d, disc);
}

QFElement::QFElement(const QuadraticField& k, Rational a, Rational b)
    : field_(k), a_(std::move(a)), b_(std::move(b)) {}

QFElement QFElement::conjugate() const { return QFElement(field_, a_, -b_); }

Rational QFElement::norm() const { return a_ * a_ - Rational(field_.d()) * b_ * b_; }

Rational QFElement::trace() const { return 2 * a_; }

namespace {

// Sign of a + b*sqrt(d) decided by comparing a^2 with d*b^2.
int sign_of(const Rational& a, const Rational& b, long long d) {
  int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
  int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rational a2 = a * a, db2 = Rational(d) * b * b;
  return a2 > db2 ? sa : sb;
}

void require_same_field(const QFElement& x, const QFElement& y) {
  if (!(x.field() == y.field()))
    throw Error(Errc::UsageError, "elements of different fields " + x.field().name() + " and " + y.field().name());
}

}  // namespace

bool QFElement::is_totally_positive() const {
  return sign_of(a_, b_, field_.d()) > 0 && sign_of(a_, -b_, field_.d()) > 0;
}

bool QFElement::is_integral() const {
  if (positive_mod(field_.d(), 4) != 1) return is_integer(a_) && is_integer(b_);
  Rational a2 = 2 * a_, b2 = 2 * b_;
  if (!is_integer(a2) || !is_integer(b2)) return false;
  return (numerator_of(a2) - numerator_of(b2)) % 2 == 0;
}

QFElement QFElement::operator-() const { return QFElement(field_, -a_, -b_); }

QFElement operator+(const QFElement& x, const QFElement& y) {
  require_same_field(x, y);
  return QFElement(x.field_, x.a_ + y.a_, x.b_ + y.b_);
}

QFElement operator-(const QFElement& x, const QFElement& y) { return x + (-y); }

QFElement operator*(const QFElement& x, const QFElement& y) {
  require_same_field(x, y);
  Rational d(x.field_.d());
  return QFElement(x.field_, x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
}

QFElement operator/(const QFElement& x, const QFElement& y) {
  require_same_field(x, y);
  if (y.is_zero()) throw Error(Errc::DivisionByZero, "division by zero in " + x.field_.name());
  QFElement num = x * y.conjugate();
  Rational n = y.norm();
  return QFElement(x.field_, num.a_ / n, num.b_ / n);
}

bool operator==(const QFElement& x, const QFElement& y) {
  return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::string QFElement::to_string() const {
  BigInt den = mp::lcm(denominator_of(a_), denominator_of(b_));
  BigInt A = numerator_of(a_ * Rational(den)), B = numerator_of(b_ * Rational(den));
  std::string inner;
  if (A != 0) inner = A.str();
  if (B != 0) {
    BigInt mag = mp::abs(B);
    if (B < 0)
      inner += "-";
    else if (!inner.empty())
      inner += "+";
    if (mag != 1) inner += mag.str() + "*";
    inner += "sqrt" + std::to_string(field_.d());
  }
  if (inner.empty()) inner = "0";
  if (den == 1) return inner;
  bool compound = A != 0 && B != 0;
  return (compound ? "(" + inner + ")" : inner) + "/" + den.str();
}

// ---------------------------------------------------------------------------
// parsing: + - * / parentheses, integers, sqrtD or sqrt(D)

namespace {

class Parser {
 public:
  Parser(const QuadraticField& k, std::string_view text) : k_(k), text_(text) {}

  QFElement parse() {
    QFElement value = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, "cannot parse element '" + std::string(text_) + "': " + why);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 's';
  }

  QFElement expr() {
    QFElement value = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        value = value + term();
      } else if (peek('-')) {
        ++pos_;
        value = value - term();
      } else {
        return value;
      }
    }
  }

  QFElement term() {
    QFElement value = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        value = value * unary();
      } else if (peek('/')) {
        ++pos_;
        value = value / unary();
      } else if (starts_primary()) {
        value = value * primary();  // implicit product such as 3sqrt2
      } else {
        return value;
      }
    }
  }

  QFElement unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return primary();
  }

  long long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 17) fail("number too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  QFElement primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      QFElement inner = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      long long radicand;
      if (peek('(')) {
        ++pos_;
        radicand = integer();
        if (!peek(')')) fail("missing ')'");
        ++pos_;
      } else {
        radicand = integer();
      }
      if (radicand != k_.d()) fail("sqrt" + std::to_string(radicand) + " is not the generator of " + k_.name());
      return QFElement(k_, 0, 1);
    }
    return QFElement(k_, Rational(integer()));
  }

  const QuadraticField& k_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QFElement parse_element(const QuadraticField& k, std::string_view text) { return Parser(k, text).parse(); }

std::optional<QFElement> sqrt_in_field(const QFElement& x) {
  const QuadraticField& k = x.field();
  if (x.is_zero()) return x;
  if (x.b() == 0) {
    if (auto r = rational_sqrt(x.a())) return QFElement(k, *r);
    if (auto r = rational_sqrt(x.a() / Rational(k.d()))) return QFElement(k, 0, *r);
    return std::nullopt;
  }
  // (u + v sqrt d)^2 = x forces N(x) = n^2 and u^2 = (a +- n)/2.
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rational& cand : {(x.a() + *n) / 2, (x.a() - *n) / 2}) {
    auto u = rational_sqrt(cand);
    if (!u || *u == 0) continue;
    QFElement root(k, *u, x.b() / (2 * *u));
    if (root * root == x) return root;
  }
  return std::nullopt;
}

std::string_view split_kind_name(SplitKind kind) {
  switch (kind) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// primes

int kronecker_symbol(long long D, long long p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    long long r = positive_mod(D, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  long long r = positive_mod(D, p);
  if (r == 0) return 0;
  return mod_pow(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

namespace {

std::pair<long long, long long> split_residues(const QuadraticField& k, long long p) {
  if (p == 2) return {1, 3};
  long long d = positive_mod(k.d(), p);
  for (long long r = 1; r < p; ++r)
    if (r * r % p == d) return {r, p - r};
  throw Error(Errc::OutOfRange, "no square root of d mod p");  // unreachable for split p
}

}  // namespace

PrimeSplit split_type(const QuadraticField& k, long long p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  PrimeSplit out;
  out.p = p;
  out.label = "p" + std::to_string(p);
  switch (kronecker_symbol(k.discriminant(), p)) {
    case 1:
      out.kind = SplitKind::split;
      out.q = p;
      out.sqrt_residue = split_residues(k, p).first;
      break;
    case -1:
      out.kind = SplitKind::inert;
      out.q = p * p;
      break;
    default:
      out.kind = SplitKind::ramified;
      out.q = p;
  }
  return out;
}

PrimeSplit split_type(const QuadraticField& k, long long p, long long sqrt_residue) {
  PrimeSplit out = split_type(k, p);
  if (out.kind != SplitKind::split)
    throw Error(Errc::UsageError, "a root choice only applies to split primes; " + std::to_string(p) + " is " +
                                      std::string(split_kind_name(out.kind)) + " in " + k.name());
  auto [first, second] = split_residues(k, p);
  long long r = positive_mod(sqrt_residue, p == 2 ? 4 : p);
  if (r != first && r != second)
    throw Error(Errc::OutOfRange, std::to_string(sqrt_residue) + " is not a square root of " +
                                      std::to_string(k.d()) + " modulo " + std::to_string(p == 2 ? 4 : p));
  out.sqrt_residue = r;
  if (r != first) out.label += "'";
  return out;
}

PrimeSplit conjugate_prime(const QuadraticField& k, const PrimeSplit& prime) {
  if (prime.kind != SplitKind::split) return prime;
  long long m = prime.p == 2 ? 4 : prime.p;
  return split_type(k, prime.p, m - prime.sqrt_residue);
}

namespace {

// x = (A + B sqrt d) / D with integers A, B and D > 0.
std::tuple<BigInt, BigInt, BigInt> integral_form(const QFElement& x) {
  BigInt D = mp::lcm(denominator_of(x.a()), denominator_of(x.b()));
  return {numerator_of(x.a() * Rational(D)), numerator_of(x.b() * Rational(D)), D};
}

BigInt big_pow(long long p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

BigInt big_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  return r < 0 ? BigInt(r + m) : r;
}

// The p-adic sqrt(d) selected by the split prime, modulo p^precision.
BigInt padic_root(const QuadraticField& k, const PrimeSplit& prime, int precision) {
  long long p = prime.p;
  if (p == 2) {
    // Odd squares are 1 mod 8, so lift bit by bit from r mod 4.
    int target = std::max(precision, 3);
    BigInt r = prime.sqrt_residue;
    for (int j = 3; j < target; ++j) {
      BigInt mod = big_pow(2, j + 1);
      if (big_mod(r * r - k.d(), mod) != 0) r += big_pow(2, j - 1);
    }
    return big_mod(r, big_pow(2, precision));
  }
  BigInt mod = big_pow(p, precision);
  BigInt r = prime.sqrt_residue;
  BigInt c = mod_inverse(2 * prime.sqrt_residue, p);
  for (int j = 1; j < precision; ++j) r = big_mod(r - (r * r - k.d()) * c, mod);
  return r;
}

int inert_valuation(const QFElement& x, long long p) {
  // Coordinates in the integral basis {1, omega}.
  Rational c0 = x.a(), c1 = x.b();
  if (positive_mod(x.field().d(), 4) == 1) {
    c0 = x.a() - x.b();
    c1 = 2 * x.b();
  }
  int v = std::numeric_limits<int>::max();
  if (c0 != 0) v = std::min(v, padic_valuation(c0, p));
  if (c1 != 0) v = std::min(v, padic_valuation(c1, p));
  return v;
}

// (A + B r) mod p^M together with the exact p-adic valuation of A + B sqrt(d) at the prime.
std::pair<int, BigInt> split_digits(const QFElement& x, const PrimeSplit& prime, int extra) {
  auto [A, B, D] = integral_form(x);
  int nv = padic_valuation(BigInt(A * A - B * B * x.field().d()), prime.p);
  int precision = nv + 1 + extra;
  BigInt mod = big_pow(prime.p, precision);
  BigInt t = big_mod(A + B * padic_root(x.field(), prime, precision), mod);
  int vy = padic_valuation(t, prime.p);  // t != 0 since v(y) <= v_p(N y) < precision
  return {vy - padic_valuation(D, prime.p), t};
}

}  // namespace

int valuation(const QFElement& x, const PrimeSplit& prime) {
  if (x.is_zero()) throw Error(Errc::ZeroInput, "valuation of zero");
  switch (prime.kind) {
    case SplitKind::inert: return inert_valuation(x, prime.p);
    case SplitKind::ramified: return padic_valuation(x.norm(), prime.p);
    case SplitKind::split: return split_digits(x, prime, 0).first;
  }
  return 0;
}

PrimeSplit prime_of_generator(const QuadraticField& k, const QFElement& pi) {
  Rational n = pi.norm();
  if (!is_integer(n) || !pi.is_integral()) throw Error(Errc::NotPrime, pi.to_string() + " is not an integral prime element");
  BigInt mag = mp::abs(numerator_of(n));
  if (mag > 1000000000 || !is_prime(mag.convert_to<long long>()))
    throw Error(Errc::NotPrime, pi.to_string() + " has norm " + to_string(n) + ", not +-prime");
  long long p = mag.convert_to<long long>();
  PrimeSplit prime = split_type(k, p);
  if (prime.kind == SplitKind::inert) throw Error(Errc::NotPrime, "inert primes have no generator of norm p");
  if (prime.kind == SplitKind::ramified) return prime;
  if (valuation(pi, prime) >= 1) return prime;
  return conjugate_prime(k, prime);
}

// ---------------------------------------------------------------------------
// local squares

namespace {

// Residue in F_p of an element of valuation 0 at a split prime.
long long split_unit_residue(const QFElement& u, const PrimeSplit& prime) {
  auto [A, B, D] = integral_form(u);
  int vd = padic_valuation(D, prime.p);
  auto [v, t] = split_digits(u, prime, vd);
  (void)v;
  BigInt scaled = t / big_pow(prime.p, vd);
  BigInt dred = D / big_pow(prime.p, vd);
  long long num = big_mod(scaled, prime.p).convert_to<long long>();
  long long den = big_mod(dred, prime.p).convert_to<long long>();
  return num * mod_inverse(den, prime.p) % prime.p;
}

bool legendre_square(long long r, long long p) { return mod_pow(r, (p - 1) / 2, p) == 1; }

// Euler criterion in F_p[sqrt d] for an inert odd prime.
bool fp2_square(long long x, long long y, long long d, long long p) {
  using u128 = __int128;
  long long rx = 1, ry = 0, bx = x, by = y;
  long long e = (p * p - 1) / 2;
  auto mul = [&](long long a0, long long a1, long long b0, long long b1) {
    long long c0 = static_cast<long long>((static_cast<u128>(a0) * b0 + static_cast<u128>(a1) * b1 % p * d) % p);
    long long c1 = static_cast<long long>((static_cast<u128>(a0) * b1 + static_cast<u128>(a1) * b0) % p);
    return std::make_pair(c0, c1);
  };
  while (e > 0) {
    if (e & 1) std::tie(rx, ry) = mul(rx, ry, bx, by);
    std::tie(bx, by) = mul(bx, by, bx, by);
    e >>= 1;
  }
  return rx == 1 && ry == 0;
}

QFElement ramified_uniformizer(const QuadraticField& k, long long p) {
  if (p == 2 && positive_mod(k.d(), 4) == 3) return QFElement(k, 1, 1);
  return QFElement(k, 0, 1);
}

QFElement integral_basis_element(const QuadraticField& k, long long x, long long y) {
  if (positive_mod(k.d(), 4) == 1) return QFElement(k, make_rational(2 * x + y, 2), make_rational(y, 2));
  return QFElement(k, Rational(x), Rational(y));
}

}  // namespace

bool is_local_square(const QuadraticField& k, const QFElement& delta, const PrimeSplit& prime) {
  if (delta.is_zero()) throw Error(Errc::ZeroInput, "local square test of zero");
  if (sqrt_in_field(delta)) throw Error(Errc::PerfectSquareInput, delta.to_string() + " is a square in " + k.name());
  int v = valuation(delta, prime);
  if (v % 2 != 0) return false;

  // Unit part u with v(u) = 0 in the same square class.
  QFElement u = delta;
  if (prime.kind == SplitKind::ramified) {
    QFElement pi = ramified_uniformizer(k, prime.p);
    QFElement scale = pi.conjugate() / QFElement(k, pi.norm());
    for (int i = 0; i < std::abs(v); ++i) u = v > 0 ? u * scale : u / scale;
  } else {
    Rational s = 1;
    for (int i = 0; i < std::abs(v); ++i) s *= prime.p;
    u = v >= 0 ? QFElement(k, delta.a() / s, delta.b() / s) : QFElement(k, delta.a() * s, delta.b() * s);
  }

  if (prime.p != 2) {
    switch (prime.kind) {
      case SplitKind::split: return legendre_square(split_unit_residue(u, prime), prime.p);
      case SplitKind::ramified: return legendre_square(residue(u.a(), prime.p), prime.p);
      case SplitKind::inert:
        return fp2_square(residue(u.a(), prime.p), residue(u.b(), prime.p), positive_mod(k.d(), prime.p), prime.p);
    }
  }

  // Residue characteristic 2: u is a square iff u = z^2 mod p^(2e+1); 8 O_k lies in that ideal.
  int e = prime.kind == SplitKind::ramified ? 2 : 1;
  for (long long x = 0; x < 8; ++x) {
    for (long long y = 0; y < 8; ++y) {
      QFElement z = integral_basis_element(k, x, y);
      QFElement diff = z * z - u;
      if (valuation(diff, prime) >= 2 * e + 1) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

Rational zeta_minus_one(const QuadraticField& k) {
  long long D = k.discriminant();
  auto sigma1 = [](long long n) {
    long long s = 0;
    for (long long t = 1; t <= n; ++t)
      if (n % t == 0) s += t;
    return s;
  };
  long long total = 0;
  for (long long b = -D; b <= D; ++b) {
    if (b * b >= D || positive_mod(b - D, 2) != 0) continue;
    total += sigma1((D - b * b) / 4);
  }
  return make_rational(total, 60);
}

}  // namespace fq

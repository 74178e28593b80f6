#include "fq/exactnum.hpp"

#include "fq/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fq {

namespace mp = boost::multiprecision;

Rational make_rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

namespace {

BigInt parse_bigint(std::string_view s) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(Errc::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  BigInt value{std::string(digits)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

BigInt numerator_of(const Rational& r) { return mp::numerator(r); }
BigInt denominator_of(const Rational& r) { return mp::denominator(r); }
bool is_integer(const Rational& r) { return mp::denominator(r) == 1; }

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt n = mp::numerator(r), d = mp::denominator(r);
  BigInt sn = mp::sqrt(n), sd = mp::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::optional<std::pair<long long, int>> prime_power(long long n) {
  if (n < 2) return std::nullopt;
  long long p = 2;
  while (n % p != 0) ++p;
  int f = 0;
  long long m = n;
  while (m % p == 0) {
    m /= p;
    ++f;
  }
  if (m != 1) return std::nullopt;
  return std::make_pair(p, f);
}

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

int mobius(int n) {
  int sign = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

long long positive_mod(long long a, long long mod) {
  long long r = a % mod;
  return r < 0 ? r + mod : r;
}

long long mod_pow(long long base, long long exp, long long mod) {
  __int128 result = 1 % mod, b = positive_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long long>(result);
}

long long mod_inverse(long long a, long long mod) {
  long long g = mod, x = 0, y = 1, r = positive_mod(a, mod);
  while (r != 0) {
    long long q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, y) = std::make_pair(y, x - q * y);
  }
  if (g != 1) throw Error(Errc::NotCoprime, std::to_string(a) + " is not a unit mod " + std::to_string(mod));
  return positive_mod(x, mod);
}

int padic_valuation(const BigInt& n, long long p) {
  if (n == 0) throw Error(Errc::ZeroInput, "valuation of zero");
  BigInt m = mp::abs(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int padic_valuation(const Rational& r, long long p) {
  return padic_valuation(mp::numerator(r), p) - padic_valuation(mp::denominator(r), p);
}

long long residue(const Rational& r, long long m) {
  BigInt num = mp::numerator(r) % m;
  BigInt den = mp::denominator(r) % m;
  long long n = positive_mod(num.convert_to<long long>(), m);
  long long d = den.convert_to<long long>();
  return static_cast<long long>(static_cast<__int128>(n) * mod_inverse(d, m) % m);
}

// ---------------------------------------------------------------------------
// polynomials

namespace {

using RatPoly = std::vector<Rational>;

IntPolynomial int_mul(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic divisor.
IntPolynomial int_div_exact(IntPolynomial a, const IntPolynomial& b) {
  std::size_t db = b.size() - 1;
  IntPolynomial q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    BigInt c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// In-place reduction modulo a monic polynomial.
void reduce(RatPoly& p, const RatPoly& modulus) {
  std::size_t deg = modulus.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    for (std::size_t j = 0; j < deg; ++j) p[i - deg + j] -= c * modulus[j];
    p[i] = 0;
  }
  p.resize(deg);
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

RatPoly poly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::pair<RatPoly, RatPoly> poly_divmod(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {{}, a};
  RatPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t s = q.size(); s-- > 0;) {
    Rational c = a[s + b.size() - 1] / lead;
    q[s] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

RatPoly make_modulus(int n) {
  RatPoly m;
  for (const auto& c : cyclotomic_polynomial(n)) m.push_back(Rational(c));
  return m;
}

}  // namespace

IntPolynomial cyclotomic_polynomial(int n) {
  if (n < 1) throw Error(Errc::OutOfRange, "cyclotomic polynomial needs n >= 1");
  IntPolynomial num{1}, den{1};
  for (int d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 0) continue;
    IntPolynomial factor(d + 1);
    factor[0] = -1;
    factor[d] = 1;
    if (mu > 0)
      num = int_mul(num, factor);
    else
      den = int_mul(den, factor);
  }
  return int_div_exact(num, den);
}

std::string polynomial_to_string(const IntPolynomial& f) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    const BigInt& c = f[i];
    if (c == 0) continue;
    BigInt mag = mp::abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// CyclotomicNumber

namespace {

// Phi_n is rebuilt per operation; cheap at the orders used here and keeps values self-contained.
RatPoly modulus_for(int n) { return make_modulus(n); }

RatPoly spread(const std::vector<Rational>& coeffs, int step) {
  if (coeffs.empty()) return {};
  RatPoly out((coeffs.size() - 1) * step + 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i * step] = coeffs[i];
  return out;
}

}  // namespace

CyclotomicNumber::CyclotomicNumber() : CyclotomicNumber(Rational(0), 1) {}

CyclotomicNumber::CyclotomicNumber(const Rational& value, int order) : order_(order) {
  if (order < 1) throw Error(Errc::OutOfRange, "cyclotomic order must be >= 1");
  coeffs_.assign(euler_phi(order), Rational(0));
  coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(int order, std::vector<Rational> coefficients) : order_(order) {
  if (order < 1) throw Error(Errc::OutOfRange, "cyclotomic order must be >= 1");
  auto modulus = modulus_for(order);
  reduce(coefficients, modulus);
  coeffs_ = std::move(coefficients);
}

CyclotomicNumber CyclotomicNumber::root_of_unity(int n, long long k) {
  if (n < 1) throw Error(Errc::OutOfRange, "root of unity order must be >= 1");
  std::vector<Rational> c(positive_mod(k, n) + 1, Rational(0));
  c.back() = 1;
  return CyclotomicNumber(n, std::move(c));
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CyclotomicNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

CyclotomicNumber CyclotomicNumber::lifted(int target) const {
  if (target % order_ != 0) throw Error(Errc::OutOfRange, "lift target must be a multiple of the order");
  if (target == order_) return *this;
  return CyclotomicNumber(target, spread(coeffs_, target / order_));
}

CyclotomicNumber CyclotomicNumber::galois(long long j) const {
  if (std::gcd(positive_mod(j, order_), static_cast<long long>(order_)) != 1)
    throw Error(Errc::NotCoprime, "Galois exponent must be a unit");
  std::vector<Rational> c(order_, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    c[positive_mod(static_cast<long long>(i) * j, order_)] += coeffs_[i];
  return CyclotomicNumber(order_, std::move(c));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(order_) + ")");
  // Extended Euclid: s*a + t*Phi = 1, only s is tracked.
  auto modulus = modulus_for(order_);
  RatPoly r0 = modulus, r1 = coeffs_;
  trim(r1);
  RatPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = poly_divmod(r0, r1);
    RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant because Phi_n is irreducible.
  Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return CyclotomicNumber(order_, std::move(s1));
}

CyclotomicNumber CyclotomicNumber::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  CyclotomicNumber result(Rational(1), order_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

namespace {

std::pair<CyclotomicNumber, CyclotomicNumber> common(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.order() == b.order()) return {a, b};
  int l = std::lcm(a.order(), b.order());
  return {a.lifted(l), b.lifted(l)};
}

}  // namespace

CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  auto [a, b] = common(x, y);
  std::vector<Rational> c = a.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coefficients()[i];
  return CyclotomicNumber(a.order(), std::move(c));
}

CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y) { return x + (-y); }

CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  auto [a, b] = common(x, y);
  return CyclotomicNumber(a.order(), poly_mul(a.coefficients(), b.coefficients()));
}

CyclotomicNumber operator/(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  auto [a, b] = common(x, y);
  return a * b.inverse();
}

bool operator==(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  auto [a, b] = common(x, y);
  return a.coefficients() == b.coefficients();
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rational c = coeffs_[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    Rational mag = c < 0 ? Rational(-c) : c;
    if (i == 0 || mag != 1) out << fq::to_string(mag);
    if (i > 0) {
      if (mag != 1) out << "*";
      out << "z" << order_;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

CyclotomicNumber cyc_arith(const CyclotomicNumber& a, const CyclotomicNumber& b, CycOp op) {
  switch (op) {
    case CycOp::add: return a + b;
    case CycOp::sub: return a - b;
    case CycOp::mul: return a * b;
    case CycOp::div: return a / b;
  }
  throw Error(Errc::UsageError, "unknown cyclotomic operation");
}

Rational as_rational(const CyclotomicNumber& a) {
  if (!a.is_rational()) throw Error(Errc::NotRational, a.to_string() + " is not rational");
  return a.coefficients()[0];
}

}  // namespace fq

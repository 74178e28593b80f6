#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fq {

// Expression templates off: values behave like plain numbers under auto.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
// Kept in lowest terms with a positive denominator by the backend.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

Rational make_rational(long long num, long long den = 1);
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);
BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);
bool is_integer(const Rational& r);
std::optional<Rational> rational_sqrt(const Rational& r);

// Small integer helpers shared by the number-theoretic modules.
bool is_prime(long long n);
// (p, f) with n = p^f, or nullopt.
std::optional<std::pair<long long, int>> prime_power(long long n);
int euler_phi(int n);
int mobius(int n);
std::vector<int> divisors(int n);
long long mod_pow(long long base, long long exp, long long mod);
long long mod_inverse(long long a, long long mod);
long long positive_mod(long long a, long long mod);
int padic_valuation(const BigInt& n, long long p);
int padic_valuation(const Rational& r, long long p);
// Image of r in Z/mZ; the denominator must be a unit mod m.
long long residue(const Rational& r, long long m);

// Integer polynomials, lowest degree first.
using IntPolynomial = std::vector<BigInt>;

IntPolynomial cyclotomic_polynomial(int n);
std::string polynomial_to_string(const IntPolynomial& f);

class CyclotomicNumber {
 public:
  CyclotomicNumber();
  CyclotomicNumber(const Rational& value, int order = 1);
  // Arbitrary-length coefficients are reduced modulo Phi_order.
  CyclotomicNumber(int order, std::vector<Rational> coefficients);

  static CyclotomicNumber root_of_unity(int n, long long k);

  int order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Same element viewed in Q(zeta_target); target must be a multiple of order().
  CyclotomicNumber lifted(int target) const;
  // zeta -> zeta^j for gcd(j, order) = 1.
  CyclotomicNumber galois(long long j) const;
  CyclotomicNumber inverse() const;
  CyclotomicNumber pow(long long e) const;

  CyclotomicNumber operator-() const;
  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  std::string to_string() const;

 private:
  int order_;
  std::vector<Rational> coeffs_;
};

inline CyclotomicNumber root_of_unity(int n, long long k) {
  return CyclotomicNumber::root_of_unity(n, k);
}

enum class CycOp { add, sub, mul, div };
CyclotomicNumber cyc_arith(const CyclotomicNumber& a, const CyclotomicNumber& b, CycOp op);

Rational as_rational(const CyclotomicNumber& a);

}  // namespace fq

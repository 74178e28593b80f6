#pragma once

#include "fq/exactnum.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace fq {

class QuadraticField {
 public:
  long long d() const { return d_; }
  long long discriminant() const { return disc_; }
  std::string name() const { return "Q(sqrt" + std::to_string(d_) + ")"; }
  friend bool operator==(const QuadraticField&, const QuadraticField&) = default;

 private:
  friend QuadraticField make_field(long long d);
  QuadraticField(long long d, long long disc) : d_(d), disc_(disc) {}
  long long d_;
  long long disc_;
};

QuadraticField make_field(long long d);

// a + b*sqrt(d)
class QFElement {
 public:
  QFElement(const QuadraticField& k, Rational a = 0, Rational b = 0);

  const QuadraticField& field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  QFElement conjugate() const;
  Rational norm() const;
  Rational trace() const;
  bool is_totally_positive() const;
  bool is_integral() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QFElement operator-() const;
  friend QFElement operator+(const QFElement& x, const QFElement& y);
  friend QFElement operator-(const QFElement& x, const QFElement& y);
  friend QFElement operator*(const QFElement& x, const QFElement& y);
  friend QFElement operator/(const QFElement& x, const QFElement& y);
  friend bool operator==(const QFElement& x, const QFElement& y);

  // "(5+sqrt5)/2" style; accepted back by parse_element.
  std::string to_string() const;

 private:
  QuadraticField field_;
  Rational a_;
  Rational b_;
};

QFElement parse_element(const QuadraticField& k, std::string_view text);
std::optional<QFElement> sqrt_in_field(const QFElement& x);

enum class SplitKind { split, inert, ramified };
std::string_view split_kind_name(SplitKind kind);

struct PrimeSplit {
  long long p = 0;
  SplitKind kind = SplitKind::inert;
  long long q = 0;
  std::string label;
  // Split primes only: which of the two primes above p. It is the image of
  // sqrt(d) in the residue field (p odd) or the class of sqrt(d) mod 4 in Z_2.
  long long sqrt_residue = -1;

  friend bool operator==(const PrimeSplit&, const PrimeSplit&) = default;
};

int kronecker_symbol(long long D, long long p);

// For split p the prime with the smaller sqrt_residue is returned.
PrimeSplit split_type(const QuadraticField& k, long long p);
PrimeSplit split_type(const QuadraticField& k, long long p, long long sqrt_residue);
PrimeSplit conjugate_prime(const QuadraticField& k, const PrimeSplit& prime);
// The prime dividing a generator of prime norm +-p.
PrimeSplit prime_of_generator(const QuadraticField& k, const QFElement& pi);

int valuation(const QFElement& x, const PrimeSplit& prime);
bool is_local_square(const QuadraticField& k, const QFElement& delta, const PrimeSplit& prime);

Rational zeta_minus_one(const QuadraticField& k);

}  // namespace fq

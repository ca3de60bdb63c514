#pragma once

// Exact arithmetic substrate: arbitrary precision integers and rationals,
// dense univariate polynomials over Q in the variable t, and rational
// functions built from them.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zetacount {

using Integer = mpz_class;
using Rational = mpq_class;

/// Reduced num/den; den must be nonzero.
Rational frac(long num, long den);

/// Parses "a" or "a/b" (b > 0, optional sign on a). Result is reduced.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer ipow(const Integer& base, unsigned long exponent);
/// p^k for any integer k (negative exponents give 1/p^|k|).
Rational rpow(const Integer& p, long exponent);

/// True iff q lies in Z[1/p], i.e. its reduced denominator is a power of p.
bool in_ring_S(const Rational& q, const Integer& p);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(Integer z, const Integer& p);

/// Deterministic for small inputs, Miller-Rabin (GMP) above.
bool is_prime(const Integer& p);

Integer lcm(const Integer& a, const Integer& b);

/// Dense polynomial in t, coefficients ascending by degree.
/// The highest stored coefficient is never zero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);
  Poly(std::initializer_list<Rational> coefficients);

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Rational> coefficients() const { return coeffs_; }
  /// Coefficient of t^k, zero beyond the degree.
  Rational coeff(std::size_t k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Lowest-degree terms only: a mod t^k.
  Poly truncated(std::size_t k) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// a = q*b + r with deg r < deg b. Throws PreconditionError when b is zero.
DivRem divrem(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) throws PreconditionError.
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
  Poly gcd;  // monic
  Poly s;
  Poly t;    // s*a + t*b = gcd
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

Poly pow(const Poly& base, unsigned exponent);

/// Exact quotient a / b; throws std::logic_error when b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

std::vector<std::string> coefficient_strings(const Poly& poly);
Poly poly_from_strings(std::span<const std::string> coefficients);
std::string to_string(const Poly& poly, std::string_view var = "t");

/// Quotient of two polynomials. Canonical form: gcd(num, den) = 1 and the
/// lowest nonzero coefficient of the denominator is 1 (its constant term
/// whenever that is nonzero).
class RationalFunction {
 public:
  RationalFunction(Poly numerator, Poly denominator);
  explicit RationalFunction(Poly numerator) : RationalFunction(std::move(numerator), Poly{1}) {}

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_canonical() const { return canonical_; }

  RationalFunction canonical() const;

  /// Throws PreconditionError at a pole.
  Rational operator()(const Rational& x) const;

  /// deg numerator - deg denominator; the zero function reports INT_MIN.
  int degree() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  /// Equality as functions (cross multiplication).
  friend bool equivalent(const RationalFunction& a, const RationalFunction& b);
  /// Structural equality of the stored numerator/denominator pair.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Poly num_;
  Poly den_;
  bool canonical_ = false;
};

std::string to_string(const RationalFunction& r, std::string_view var = "t");

}  // namespace zetacount

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zetacount/exact.hpp"

namespace zetacount {

using Exponents = std::vector<unsigned>;

/// Multivariate polynomial with integer coefficients in x1..xn.
/// Never the zero polynomial; every exponent vector has length n.
class LatticePolynomial {
 public:
  LatticePolynomial(unsigned variable_count, std::map<Exponents, Integer> terms);

  /// Text syntax: sum of terms c*x1^a1*...*xn^an, '*' and '^1' optional,
  /// variables x1..xn or x, y, z. `variable_count` of 0 infers n from the
  /// highest variable index used (at least 1).
  static LatticePolynomial parse(std::string_view text, unsigned variable_count = 0);

  unsigned variable_count() const { return n_; }
  const std::map<Exponents, Integer>& terms() const { return terms_; }
  unsigned total_degree() const;
  bool is_constant() const;

  /// Formal partial derivative d/dx_{var}; may be the zero polynomial, so it
  /// is returned as a raw term map.
  std::map<Exponents, Integer> partial(unsigned var) const;

  Integer evaluate(std::span<const Integer> x) const;

  std::string to_string() const;

 private:
  unsigned n_;
  std::map<Exponents, Integer> terms_;
};

Integer evaluate_terms(const std::map<Exponents, Integer>& terms, std::span<const Integer> x);

}  // namespace zetacount

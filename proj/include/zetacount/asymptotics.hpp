#pragma once

// Closed forms for M_i from the partial fraction decomposition of P(t):
//
//   M_i = sum_k g_k(i) p^ceil(l_k i),   l_k = n - a_k / b_k,
//
// with g_k polynomial on each residue class of i modulo b_k.

#include <string>
#include <vector>

#include "zetacount/exact.hpp"
#include "zetacount/zeta_link.hpp"

namespace zetacount {

/// Factors sharing one ratio nu/N.
struct PoleClass {
  std::vector<std::size_t> members;  // indices into the source FactorSpec
  Rational ratio;                    // nu/N, reduced
  unsigned a = 0;                    // lcm of member nu
  unsigned b = 0;                    // lcm of member N
  unsigned m = 0;                    // member count
};

/// Classes ordered by increasing ratio, i.e. decreasing growth exponent.
struct PoleClassification {
  std::vector<PoleClass> classes;
  FactorSpec source;
};

PoleClassification classify_poles(const FactorSpec& factors);

/// 1 - p^-a t^b for a class.
Poly class_base(const Integer& p, const PoleClass& cls);

/// P(t) = C(t) / prod_k (1 - p^-a_k t^b_k)^m_k, unreduced.
RationalFunction common_denominator_form(const PoincareSeries& ps, const PoleClassification& cls);

struct ClassTerms {
  Poly combined;            // C_k, deg < m_k b_k
  std::vector<Poly> nested; // nested[l-1] = C_{k,l}, deg < b_k, l = 1..m_k
};

struct PartialFractionDecomposition {
  Integer p;
  unsigned n = 0;
  PoleClassification classification;
  Poly polynomial_part;  // C_0
  std::vector<ClassTerms> terms;
  int degree = 0;  // deg P = deg numerator - deg denominator

  /// C_0 + sum_k C_k / (1 - p^-a_k t^b_k)^m_k, canonical.
  RationalFunction recombine() const;
};

/// Decomposition over Q without the multiplicity check; valid for any
/// numerator over the class denominators.
PartialFractionDecomposition decompose(const Integer& p, unsigned n, const Poly& numerator,
                                       const PoleClassification& cls);

/// Decomposition of a Poincare series. Throws PreconditionError when some
/// class does not reach its full multiplicity (C_{k,m_k} = 0).
PartialFractionDecomposition partial_fractions(const PoincareSeries& ps, const PoleClassification& cls);

struct ResiduePolynomial {
  unsigned d = 0;
  std::vector<Rational> g;     // g_{k,d}(e), ascending powers of e
  std::vector<Rational> ghat;  // p^floor(d a / b) g_{k,d}(e)
};

struct ClassFormula {
  unsigned a = 0;
  unsigned b = 0;
  unsigned m = 0;
  Rational l;  // n - a/b
  std::vector<ResiduePolynomial> residues;  // d = 0..b-1
};

struct ClosedForm {
  Integer p;
  unsigned n = 0;
  long threshold = -1;  // formulas hold for i > threshold
  std::vector<ClassFormula> classes;
};

ClosedForm closed_form(const PartialFractionDecomposition& pfd);

/// Exact value of the closed form at i, without integrality checks.
Rational evaluate_rational(const ClosedForm& cf, long i);
/// Throws PreconditionError for i <= threshold or a non-integral or negative result.
Integer evaluate(const ClosedForm& cf, long i);

struct DominantTerm {
  Rational l_max;
  unsigned order = 0;
  unsigned period = 1;             // b of the dominant class
  std::vector<Rational> leading;   // per residue d: M_i ~ leading[d] i^(order-1) p^ceil(l i)
  std::string statement;
};

DominantTerm dominant_term(const ClosedForm& cf);

/// Warnings for classes with l_k < n/2, and with l_k < 2 when the caller
/// asserts n = 3 without singular points of multiplicity 2.
std::vector<std::string> lint_bounds(const ClosedForm& cf, bool assume_n3_no_multiplicity_two = false);

/// Value of a polynomial in e with rational coefficients.
Rational eval_in_e(const std::vector<Rational>& coeffs, const Rational& e);

}  // namespace zetacount

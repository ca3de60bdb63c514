#pragma once

// Poincare series P(t) = sum M_i (p^-n t)^i as rational functions: series
// expansion, the P <-> Z_f conversions, and numerator fitting from counts.

#include <optional>
#include <string>
#include <vector>

#include "zetacount/counting.hpp"
#include "zetacount/exact.hpp"

namespace zetacount {

/// One denominator factor 1 - p^-nu t^N.
struct DenominatorFactor {
  unsigned nu = 0;
  unsigned N = 0;
  friend bool operator==(const DenominatorFactor&, const DenominatorFactor&) = default;
};

using FactorSpec = std::vector<DenominatorFactor>;

/// Throws ParseError on nu or N equal to zero.
void validate_factors(const FactorSpec& factors);
/// "nu,N;nu,N;..."
FactorSpec parse_factor_spec(std::string_view text);
std::string to_string(const FactorSpec& factors);

Poly factor_poly(const Integer& p, const DenominatorFactor& factor);
Poly factor_product(const Integer& p, const FactorSpec& factors);

/// P(t) at a fixed prime. When `factors` is present the denominator is
/// exactly their product and the numerator is B(t) of that presentation;
/// otherwise the pair is the canonical reduced form.
struct PoincareSeries {
  Integer p;
  unsigned n = 0;
  Poly numerator;
  Poly denominator;
  std::optional<FactorSpec> factors;

  RationalFunction ratfunc() const { return RationalFunction(numerator, denominator).canonical(); }
};

struct SeriesBuild {
  PoincareSeries series;
  std::vector<std::string> warnings;
};

/// Checks P(0) = 1, removes whole factors dividing the numerator (with a
/// warning each), and warns when numerator coefficients are outside Z[1/p].
SeriesBuild make_series_with_factors(const Integer& p, unsigned n, Poly numerator, FactorSpec factors);
/// Raw presentation without a known factorisation; stored canonically.
SeriesBuild make_series_raw(const Integer& p, unsigned n, const RationalFunction& f);

/// Taylor coefficients c_0..c_upto at t = 0 via the denominator recurrence.
std::vector<Rational> series_coefficients(const RationalFunction& r, std::size_t upto);

/// M_i = c_i p^(n i); throws PreconditionError on a negative or fractional M_i.
CountTable counts_from_series(const PoincareSeries& ps, std::size_t upto);

/// Z_f(t) = P(t) - (P(t) - 1)/t, canonical. Throws PreconditionError unless Z(1) = 1.
RationalFunction z_from_p(const PoincareSeries& ps);
/// Z_f numerator A(t) over the same factor product as `ps` (requires factors).
Poly z_numerator_over_factors(const PoincareSeries& ps);

/// P(t) = (1 - t Z(t)) / (1 - t); throws PreconditionError unless Z(1) = 1.
/// With `factors` the result is presented over their product.
PoincareSeries p_from_z(const RationalFunction& z, const Integer& p, unsigned n,
                        const std::optional<FactorSpec>& factors = std::nullopt);

struct FitOptions {
  std::optional<unsigned> degree_bound;  // defaults to sum of N_j
  unsigned slack = 5;
};

/// B_j = sum_i M_i p^(-n i) D_(j-i) with D the expanded factor product.
/// Coefficients above the degree bound must vanish over the whole table and
/// B must lie in Z[1/p][t]; either failure throws PreconditionError.
SeriesBuild fit_numerator(const CountTable& table, const FactorSpec& factors, const FitOptions& options = {});

struct ValidationRow {
  std::size_t i = 0;
  Rational predicted;
  Integer counted;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool passed() const;
  std::size_t failures() const;
};

ValidationReport validate_poincare(const PoincareSeries& ps, const CountTable& table);

}  // namespace zetacount

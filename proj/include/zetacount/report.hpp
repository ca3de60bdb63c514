#pragma once

// Human-readable renderings used by the CLI.

#include <string>

#include "zetacount/asymptotics.hpp"
#include "zetacount/counting.hpp"
#include "zetacount/zeta_link.hpp"

namespace zetacount {

std::string render_counts(const CountTable& table);
std::string render_series(const PoincareSeries& ps);
std::string render_classes(const PoleClassification& cls, unsigned n);
std::string render_decomposition(const PartialFractionDecomposition& pfd);

/// Per-class formulas in both presentations, followed by a combined table
/// M_{L e + r} = ... over L = lcm of all periods (omitted when L > 60).
std::string render_closed_form(const ClosedForm& cf);
std::string render_validation(const ValidationReport& report);

/// c * p^(alpha e + beta) with powers of p pulled out of c.
std::string render_power_term(const Rational& c, const Integer& p, long alpha, long beta);

}  // namespace zetacount

#include "zetacount/zeta_link.hpp"

#include <numeric>
#include <sstream>

#include "zetacount/errors.hpp"

namespace zetacount {

void validate_factors(const FactorSpec& factors) {
  for (const auto& f : factors)
    if (f.nu == 0 || f.N == 0) throw ParseError("denominator factor needs nu >= 1 and N >= 1");
}

FactorSpec parse_factor_spec(std::string_view text) {
  FactorSpec out;
  std::string s(text);
  std::stringstream items(s);
  std::string item;
  while (std::getline(items, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("factor '" + item + "' is not of the form nu,N");
    Integer nu = parse_integer(item.substr(0, comma));
    Integer N = parse_integer(item.substr(comma + 1));
    if (nu < 1 || N < 1 || !nu.fits_uint_p() || !N.fits_uint_p())
      throw ParseError("factor '" + item + "' needs positive nu and N");
    out.push_back({static_cast<unsigned>(nu.get_ui()), static_cast<unsigned>(N.get_ui())});
  }
  if (out.empty()) throw ParseError("empty factor specification");
  return out;
}

std::string to_string(const FactorSpec& factors) {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += ";";
    out += std::to_string(f.nu) + "," + std::to_string(f.N);
  }
  return out;
}

Poly factor_poly(const Integer& p, const DenominatorFactor& factor) {
  return Poly{1} - Poly::monomial(rpow(p, -static_cast<long>(factor.nu)), factor.N);
}

Poly factor_product(const Integer& p, const FactorSpec& factors) {
  Poly out{1};
  for (const auto& f : factors) out = out * factor_poly(p, f);
  return out;
}

namespace {

void check_constant_term_one(const Poly& num, const Poly& den) {
  if (den.coeff(0) == 0) throw PreconditionError("denominator vanishes at t = 0; not a Poincare series");
  Rational at0 = num.coeff(0) / den.coeff(0);
  if (at0 != 1) throw PreconditionError("P(0) = " + to_string(at0) + ", but P(0) = M_0 must be 1");
}

void warn_outside_S(const Poly& poly, const Integer& p, const std::string& what, std::vector<std::string>& warnings) {
  for (std::size_t k = 0; k < poly.coefficients().size(); ++k)
    if (!in_ring_S(poly.coefficients()[k], p))
      warnings.push_back(what + " coefficient of t^" + std::to_string(k) + " = " + to_string(poly.coefficients()[k]) +
                         " is not in Z[1/p]");
}

}  // namespace

SeriesBuild make_series_with_factors(const Integer& p, unsigned n, Poly numerator, FactorSpec factors) {
  validate_factors(factors);
  if (n == 0) throw PreconditionError("variable count must be positive");
  check_constant_term_one(numerator, Poly{1});
  SeriesBuild out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      auto [q, r] = divrem(numerator, factor_poly(p, factors[j]));
      if (!r.is_zero() || numerator.is_zero()) continue;
      out.warnings.push_back("numerator divisible by 1 - p^-" + std::to_string(factors[j].nu) + " t^" +
                             std::to_string(factors[j].N) + "; factor (" + std::to_string(factors[j].nu) + "," +
                             std::to_string(factors[j].N) + ") removed");
      numerator = std::move(q);
      factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
      break;
    }
  }
  warn_outside_S(numerator, p, "numerator", out.warnings);
  Poly den = factor_product(p, factors);
  out.series = PoincareSeries{p, n, std::move(numerator), std::move(den), std::move(factors)};
  return out;
}

SeriesBuild make_series_raw(const Integer& p, unsigned n, const RationalFunction& f) {
  if (n == 0) throw PreconditionError("variable count must be positive");
  RationalFunction c = f.canonical();
  check_constant_term_one(c.numerator(), c.denominator());
  SeriesBuild out;
  warn_outside_S(c.numerator(), p, "numerator", out.warnings);
  warn_outside_S(c.denominator(), p, "denominator", out.warnings);
  out.series = PoincareSeries{p, n, c.numerator(), c.denominator(), std::nullopt};
  return out;
}

std::vector<Rational> series_coefficients(const RationalFunction& r, std::size_t upto) {
  const Poly& num = r.numerator();
  const Poly& den = r.denominator();
  if (den.coeff(0) == 0) throw PreconditionError("series expansion needs a denominator with nonzero constant term");
  const Rational inv0 = 1 / den.coeff(0);
  const auto dc = den.coefficients();
  std::vector<Rational> c(upto + 1);
  for (std::size_t i = 0; i <= upto; ++i) {
    Rational acc = num.coeff(i);
    const std::size_t reach = std::min<std::size_t>(i, dc.size() - 1);
    for (std::size_t j = 1; j <= reach; ++j)
      if (dc[j] != 0) acc -= dc[j] * c[i - j];
    c[i] = acc * inv0;
  }
  return c;
}

CountTable counts_from_series(const PoincareSeries& ps, std::size_t upto) {
  auto c = series_coefficients(RationalFunction(ps.numerator, ps.denominator), upto);
  CountTable table{ps.p, ps.n, {}};
  for (std::size_t i = 0; i <= upto; ++i) {
    Rational m = c[i] * Rational(ipow(ps.p, ps.n * i));
    if (m.get_den() != 1 || m < 0)
      throw PreconditionError("series predicts M_" + std::to_string(i) + " = " + to_string(m) +
                              ", not a nonnegative integer; input is not a Poincare series");
    table.counts.push_back(m.get_num());
  }
  return table;
}

namespace {

Poly shift_down(const Poly& a) {
  if (a.coeff(0) != 0) throw std::logic_error("shift_down: nonzero constant term");
  auto cs = a.coefficients();
  if (cs.empty()) return a;
  return Poly(std::vector<Rational>(cs.begin() + 1, cs.end()));
}

void require_z_at_one(const RationalFunction& z) {
  Rational v;
  try {
    v = z(Rational(1));
  } catch (const PreconditionError&) {
    throw PreconditionError("Z(t) has a pole at t = 1; Z(1) = 1 is required");
  }
  if (v != 1) throw PreconditionError("Z(1) = " + to_string(v) + ", but Z(1) = 1 is required");
}

}  // namespace

Poly z_numerator_over_factors(const PoincareSeries& ps) {
  // Z = ((t - 1) N + D) / (t D); P(0) = 1 makes the numerator divisible by t.
  Poly top = Poly{-1, 1} * ps.numerator + ps.denominator;
  return shift_down(top);
}

RationalFunction z_from_p(const PoincareSeries& ps) {
  RationalFunction z = RationalFunction(z_numerator_over_factors(ps), ps.denominator).canonical();
  require_z_at_one(z);
  return z;
}

PoincareSeries p_from_z(const RationalFunction& z, const Integer& p, unsigned n,
                        const std::optional<FactorSpec>& factors) {
  require_z_at_one(z);
  // P = (V - t U) / ((1 - t) V) for Z = U / V; the 1 - t cancels exactly.
  const Poly top = z.denominator() - Poly{0, 1} * z.numerator();
  const Poly num = exact_div(top, Poly{1, -1});
  RationalFunction pc = RationalFunction(num, z.denominator()).canonical();
  if (!factors) return make_series_raw(p, n, pc).series;
  const Poly prod = factor_product(p, *factors);
  auto [scale, rem] = divrem(prod, pc.denominator());
  if (!rem.is_zero())
    throw PreconditionError("P(t) denominator does not divide the factor product " + to_string(*factors));
  return make_series_with_factors(p, n, pc.numerator() * scale, *factors).series;
}

SeriesBuild fit_numerator(const CountTable& table, const FactorSpec& factors, const FitOptions& options) {
  validate_factors(factors);
  if (table.counts.empty()) throw PreconditionError("empty count table");
  const std::size_t D = table.counts.size() - 1;
  unsigned bound = 0;
  for (const auto& f : factors) bound += f.N;
  if (options.degree_bound) bound = *options.degree_bound;
  if (D < static_cast<std::size_t>(bound) + options.slack)
    throw PreconditionError("count table too short: need M_0..M_" + std::to_string(bound + options.slack) +
                            " (degree bound " + std::to_string(bound) + " + slack " + std::to_string(options.slack) +
                            "), have M_0..M_" + std::to_string(D));

  const Poly den = factor_product(table.p, factors);
  const auto dc = den.coefficients();
  std::vector<Rational> c(D + 1);
  for (std::size_t i = 0; i <= D; ++i) c[i] = Rational(table.counts[i]) / Rational(ipow(table.p, table.n * i));

  std::vector<Rational> b(D + 1);
  for (std::size_t j = 0; j <= D; ++j) {
    Rational acc = 0;
    for (std::size_t k = 0; k < dc.size() && k <= j; ++k)
      if (dc[k] != 0) acc += c[j - k] * dc[k];
    b[j] = acc;
  }
  for (std::size_t j = bound + 1; j <= D; ++j)
    if (b[j] != 0)
      throw PreconditionError("consistency check failed: numerator coefficient of t^" + std::to_string(j) + " is " +
                              to_string(b[j]) + " (expected 0 above degree bound " + std::to_string(bound) +
                              "); the factors " + to_string(factors) +
                              " do not explain the counts, or the degree bound is too small");
  b.resize(std::min<std::size_t>(bound + 1, b.size()));
  Poly numerator(std::move(b));
  for (std::size_t k = 0; k < numerator.coefficients().size(); ++k)
    if (!in_ring_S(numerator.coefficients()[k], table.p))
      throw PreconditionError("fitted numerator coefficient of t^" + std::to_string(k) + " = " +
                              to_string(numerator.coefficients()[k]) + " is not in Z[1/p]");
  return make_series_with_factors(table.p, table.n, std::move(numerator), factors);
}

bool ValidationReport::passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ValidationRow& r) { return !r.pass; }));
}

ValidationReport validate_poincare(const PoincareSeries& ps, const CountTable& table) {
  if (ps.p != table.p || ps.n != table.n)
    throw PreconditionError("series and count table disagree on p or n");
  ValidationReport report;
  if (table.counts.empty()) return report;
  auto c = series_coefficients(RationalFunction(ps.numerator, ps.denominator), table.counts.size() - 1);
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    Rational predicted = c[i] * Rational(ipow(ps.p, ps.n * i));
    report.rows.push_back({i, predicted, table.counts[i], predicted == Rational(table.counts[i])});
  }
  return report;
}

}  // namespace zetacount

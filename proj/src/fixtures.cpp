#include "zetacount/fixtures.hpp"

#include "zetacount/errors.hpp"

namespace zetacount {

namespace {

// sum_k c_k t^k from (degree, coefficient) pairs.
Poly sparse(std::initializer_list<std::pair<std::size_t, Integer>> terms) {
  Poly out;
  for (const auto& [deg, c] : terms) out += Poly::monomial(Rational(c), deg);
  return out;
}

PoincareSeries with_factors(const Integer& p, unsigned n, Poly numerator, FactorSpec factors) {
  return make_series_with_factors(p, n, std::move(numerator), std::move(factors)).series;
}

// y^2 - x^3:
//   P(t) = (-t^6 + p^4 t^2 - p^3 t^2 + p^6) / ((p^5 - t^6)(p - t))
// and (p^5 - t^6)(p - t) = p^6 (1 - p^-5 t^6)(1 - p^-1 t).
PoincareSeries cusp(const Integer& p) {
  Poly num = sparse({{0, ipow(p, 6)}, {2, ipow(p, 4) - ipow(p, 3)}, {6, Integer(-1)}});
  return with_factors(p, 2, num * rpow(p, -6), {{5, 6}, {1, 1}});
}

// x^3 + y^5, denominator (p^8 - t^15)(p - t) = p^9 (1 - p^-8 t^15)(1 - p^-1 t).
PoincareSeries e8_curve(const Integer& p) {
  const Integer q = p - 1;
  Poly num = sparse({{15, Integer(-1)},
                     {14, q},
                     {12, q * p},
                     {9, q * ipow(p, 3)},
                     {8, q * ipow(p, 3)},
                     {5, q * ipow(p, 5)},
                     {3, q * ipow(p, 6)},
                     {2, q * ipow(p, 6)},
                     {0, ipow(p, 9)}});
  return with_factors(p, 2, num * rpow(p, -9), {{8, 15}, {1, 1}});
}

// Smooth graphs: M_i = p^i for x + y^2 (n = 2) and M_i = 1 for x (n = 1);
// both give P(t) = 1 / (1 - p^-1 t).
PoincareSeries geometric(const Integer& p, unsigned n) { return with_factors(p, n, Poly{1}, {{1, 1}}); }

// A nonzero constant: M_i = 0 for i >= 1, so P(t) = 1.
PoincareSeries unit(const Integer& p) { return with_factors(p, 1, Poly{1}, {}); }

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"example1", "y^2 - x^3", {2, 3, 5}, "cusp y^2 = x^3, pole classes 5/6 and 1", 12, cusp},
      {"example2", "x^3 + y^5", {2, 3}, "x^3 + y^5, pole classes 8/15 and 1", 21, e8_curve},
      {"parabola", "x + y^2", {2, 3, 5}, "smooth curve, M_i = p^i", 12, [](const Integer& p) { return geometric(p, 2); }},
      {"line", "x", {2, 3, 5, 7}, "single variable, M_i = 1", 12, [](const Integer& p) { return geometric(p, 1); }},
      {"constant", "1", {2, 5}, "nonzero constant, no solutions beyond mod 1", 6, unit},
  };
  return all;
}

const Fixture& find_fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  std::string known;
  for (const auto& f : fixtures()) known += (known.empty() ? "" : ", ") + f.name;
  throw ParseError("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace zetacount

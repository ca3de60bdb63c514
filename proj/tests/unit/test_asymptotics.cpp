#include <doctest.h>

#include "../support.hpp"
#include "zetacount/errors.hpp"
#include "zetacount/fixtures.hpp"
#include "zetacount/json_io.hpp"

using namespace zetacount;

namespace {

PoincareSeries fixture_series(const char* name, long p) { return find_fixture(name).poincare(Integer(p)); }

ClosedForm closed_form_of(const PoincareSeries& ps) {
  return closed_form(partial_fractions(ps, classify_poles(*ps.factors)));
}

const ResiduePolynomial& residue(const ClassFormula& c, unsigned d) { return c.residues.at(d); }

}  // namespace

TEST_CASE("pole classes") {
  auto ex1 = classify_poles({{5, 6}, {1, 1}});
  REQUIRE(ex1.classes.size() == 2);
  CHECK(ex1.classes[0].ratio == frac(5, 6));
  CHECK(ex1.classes[0].a == 5);
  CHECK(ex1.classes[0].b == 6);
  CHECK(ex1.classes[0].m == 1);
  CHECK(ex1.classes[1].ratio == 1);
  CHECK(ex1.classes[1].a == 1);
  CHECK(ex1.classes[1].b == 1);

  auto ex2 = classify_poles({{8, 15}, {1, 1}});
  CHECK(ex2.classes[0].ratio == frac(8, 15));
  CHECK(ex2.classes[0].b == 15);

  // Ordered by decreasing growth exponent: ratio 1/2 before 2/3.
  auto mixed = classify_poles({{2, 3}, {4, 6}, {1, 2}});
  REQUIRE(mixed.classes.size() == 2);
  CHECK(mixed.classes[0].ratio == frac(1, 2));
  CHECK(mixed.classes[0].m == 1);
  CHECK(mixed.classes[0].members == std::vector<std::size_t>{2});
  CHECK(mixed.classes[1].ratio == frac(2, 3));
  CHECK(mixed.classes[1].a == 4);
  CHECK(mixed.classes[1].b == 6);
  CHECK(mixed.classes[1].m == 2);
  CHECK(mixed.classes[1].members == std::vector<std::size_t>{0, 1});
}

TEST_CASE("class bases are multiples of their members") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = zctest::random_factor_spec(rng);
    const auto cls = classify_poles(spec);
    std::size_t members = 0;
    for (const auto& c : cls.classes) {
      CHECK(frac(c.a, c.b) == c.ratio);
      members += c.members.size();
      for (auto j : c.members) {
        CHECK(frac(spec[j].nu, spec[j].N) == c.ratio);
        CHECK(divrem(class_base(3, c), factor_poly(3, spec[j])).remainder.is_zero());
      }
    }
    CHECK(members == spec.size());
    for (std::size_t k = 1; k < cls.classes.size(); ++k) CHECK(cls.classes[k - 1].ratio < cls.classes[k].ratio);
  }
}

TEST_CASE("common denominator form") {
  for (long p : {2, 3}) {
    const Rational P(p);
    auto ps = make_series_with_factors(p, 2, Poly{1}, {{2, 3}, {4, 6}}).series;
    const auto cls = classify_poles(*ps.factors);
    const auto c = common_denominator_form(ps, cls);
    CHECK(c.numerator() == (Poly{1} + Poly::monomial(1 / (P * P), 3)));
    CHECK(c.numerator() * factor_product(p, *ps.factors) == ps.numerator * pow(class_base(p, cls.classes[0]), 2));
    CHECK(equivalent(c, ps.ratfunc()));
  }
  for (const char* name : {"example1", "example2"}) {
    const auto ps = fixture_series(name, 3);
    CHECK(common_denominator_form(ps, classify_poles(*ps.factors)).numerator() == ps.numerator);
  }
}

TEST_CASE("cusp partial fractions") {
  for (long p : {2, 3, 5}) {
    const auto ps = fixture_series("example1", p);
    const auto pfd = partial_fractions(ps, classify_poles(*ps.factors));
    CHECK(pfd.polynomial_part.is_zero());
    REQUIRE(pfd.terms.size() == 2);
    CHECK(pfd.terms[0].combined == zctest::cusp_c1(p));
    CHECK(pfd.terms[1].combined == zctest::cusp_c2(p));
    CHECK(pfd.degree == -1);
    CHECK(pfd.recombine() == ps.ratfunc());
  }
}

TEST_CASE("x^3 + y^5 partial fractions") {
  for (long p : {2, 3, 5}) {
    const auto ps = fixture_series("example2", p);
    const auto pfd = partial_fractions(ps, classify_poles(*ps.factors));
    CHECK(pfd.polynomial_part.is_zero());
    CHECK(pfd.terms[0].combined == zctest::e8_c1(p));
    CHECK(pfd.terms[1].combined == zctest::e8_c2(p));
    CHECK_FALSE(in_ring_S(pfd.terms[1].combined.coeff(0), p));
  }
}

TEST_CASE("geometric series") {
  const auto ps = fixture_series("parabola", 3);
  const auto pfd = partial_fractions(ps, classify_poles(*ps.factors));
  CHECK(pfd.polynomial_part.is_zero());
  CHECK(pfd.terms[0].combined == Poly{1});
  const auto cf = closed_form(pfd);
  CHECK(cf.threshold == -1);
  CHECK(cf.classes[0].l == 1);
  CHECK(evaluate(cf, 9) == ipow(3, 9));
}

TEST_CASE("polynomial part and threshold") {
  // P = (1 + t^3) / (1 - t/2) at p = 2, n = 1: deg P = 2.
  const auto ps = make_series_with_factors(2, 1, Poly{1, 0, 0, 1}, {{1, 1}}).series;
  const auto pfd = partial_fractions(ps, classify_poles(*ps.factors));
  CHECK(pfd.degree == 2);
  CHECK(pfd.polynomial_part.degree() == 2);
  CHECK(pfd.recombine() == ps.ratfunc());
  const auto cf = closed_form(pfd);
  CHECK(cf.threshold == 2);
  CHECK_THROWS_AS(evaluate(cf, 2), PreconditionError);
  const auto c = series_coefficients(ps.ratfunc(), 10);
  for (long i = 3; i <= 10; ++i) CHECK(evaluate_rational(cf, i) * rpow(2, -i) == c[static_cast<std::size_t>(i)]);
}

TEST_CASE("nested expansion for a double pole") {
  // (1,2) and (2,4) share the ratio 1/2: one class with a = 2, b = 4, m = 2.
  const Integer p = 3;
  const auto cls = classify_poles({{1, 2}, {2, 4}});
  REQUIRE(cls.classes.size() == 1);
  const auto& c = cls.classes[0];
  CHECK(c.m == 2);
  const Poly base = class_base(p, c);
  const Poly num{frac(2, 9), 1, 0, frac(-1, 3), 5, 0, 0, frac(1, 27)};
  const auto pfd = decompose(p, 2, num, cls);
  const auto& terms = pfd.terms[0];
  REQUIRE(terms.nested.size() == 2);
  CHECK(terms.combined == num);
  CHECK(terms.combined == terms.nested[0] * base + terms.nested[1]);
  for (const auto& nl : terms.nested) CHECK(nl.degree() < static_cast<int>(c.b));
}

TEST_CASE("closed form of a pure double pole") {
  // 1 / (1 - p^-2 t^2)^2 over the class of (1,1),(2,2): b = 2, m = 2.
  const Integer p = 2;
  const auto cls = classify_poles({{1, 1}, {2, 2}});
  // C_{k,1} = 0, C_{k,2} = 1 gives g_{k,0}(e) = e + 1 and g_{k,1} = 0.
  const auto pfd = decompose(p, 1, Poly{1}, cls);
  CHECK(pfd.terms[0].nested[0].is_zero());
  CHECK(pfd.terms[0].nested[1] == Poly{1});
  const auto cf = closed_form(pfd);
  REQUIRE(cf.classes[0].residues.size() == 2);
  CHECK(residue(cf.classes[0], 0).g == std::vector<Rational>{1, 1});
  CHECK(residue(cf.classes[0], 1).g.empty());
}

TEST_CASE("cusp closed form") {
  const Integer p = 2;
  const auto cf = closed_form_of(fixture_series("example1", 2));
  CHECK(cf.threshold == -1);
  REQUIRE(cf.classes.size() == 2);
  const auto& main = cf.classes[0];
  CHECK(main.l == frac(7, 6));
  CHECK(residue(main, 2).g == std::vector<Rational>{2 * zctest::pw(p, -2)});
  CHECK(residue(main, 2).ghat == std::vector<Rational>{Rational(2) * zctest::pw(p, -2) * zctest::pw(p, 1)});
  const auto& line = cf.classes[1];
  CHECK(line.l == 1);
  CHECK(residue(line, 0).g == std::vector<Rational>{-zctest::pw(p, -1)});
  CHECK(evaluate(cf, 8) == 896);
  CHECK(evaluate(closed_form_of(fixture_series("example1", 3)), 0) == 1);
  CHECK(evaluate(closed_form_of(fixture_series("example2", 2)), 3) == 20);
  CHECK(evaluate(closed_form_of(fixture_series("example2", 2)), 18) == 84017152);
}

TEST_CASE("evaluate matches the series on every fixture") {
  for (const auto& fx : fixtures()) {
    for (unsigned p : fx.primes) {
      const auto ps = fx.poincare(p);
      const auto cf = closed_form_of(ps);
      const auto c = series_coefficients(ps.ratfunc(), 200);
      for (long i = cf.threshold + 1; i <= 200; ++i)
        CHECK(evaluate_rational(cf, i) * rpow(p, -static_cast<long>(ps.n) * i) == c[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("degree law and residue structure") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = zctest::random_factor_spec(rng);
    Poly num = zctest::random_poly(rng, 4, 5);
    num = Poly{1} + Poly{0, 1} * num;
    const auto build = make_series_with_factors(2, 2, num, spec);
    const auto& ps = build.series;
    const auto cls = classify_poles(*ps.factors);
    PartialFractionDecomposition pfd;
    try {
      pfd = partial_fractions(ps, cls);
    } catch (const PreconditionError&) {
      // reduced numerator still shares a factor with a class power
      continue;
    }
    const auto cf = closed_form(pfd);
    ++checked;
    for (std::size_t k = 0; k < cf.classes.size(); ++k) {
      const auto& c = cf.classes[k];
      std::size_t max_len = 0;
      for (const auto& r : c.residues) {
        max_len = std::max(max_len, r.g.size());
        // ghat(e) = p^floor(d a / b) g(e) as polynomials in e
        const Rational scale = rpow(2, static_cast<long>(zctest::floor_q(frac(r.d * c.a, c.b)).get_si()));
        REQUIRE(r.ghat.size() == r.g.size());
        for (std::size_t j = 0; j < r.g.size(); ++j) CHECK(r.ghat[j] == scale * r.g[j]);
        // as a function of i = e b + d the degree is unchanged
        for (long e = 0; e < 4 && !r.g.empty(); ++e) {
          const Rational i(e * c.b + r.d);
          CHECK(eval_in_e(r.g, (i - r.d) / c.b) == eval_in_e(r.g, Rational(e)));
        }
      }
      CHECK(max_len == c.m);
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("floor and ceiling bookkeeping") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned a = 1; a <= 12; ++a)
      for (unsigned b = 1; b <= 12; ++b)
        for (unsigned d = 0; d < b; ++d)
          for (long e = 0; e <= 20; ++e) {
            const long i = e * b + d;
            const Rational l = Rational(n) - frac(a, b);
            const Integer lhs = zctest::floor_q(frac(d * a, b)) + zctest::ceil_q(l * i) - Integer(n) * i;
            CHECK(lhs == -static_cast<long>(a) * e);
          }
}

TEST_CASE("recombination on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = zctest::random_factor_spec(rng);
    const auto cls = classify_poles(spec);
    Poly den{1};
    for (const auto& c : cls.classes) den = den * pow(class_base(5, c), c.m);
    const Poly num = zctest::random_poly(rng, den.degree() + 3, 20);
    const auto pfd = decompose(5, 2, num, cls);
    CHECK(pfd.recombine() == RationalFunction(num, den).canonical());
    for (std::size_t k = 0; k < cls.classes.size(); ++k) {
      const auto& c = cls.classes[k];
      CHECK(pfd.terms[k].combined.degree() < static_cast<int>(c.m * c.b));
    }
  }
}

TEST_CASE("decomposition is unique under perturbation") {
  for (const char* name : {"example1", "example2"}) {
    const auto ps = fixture_series(name, 3);
    const auto pfd = partial_fractions(ps, classify_poles(*ps.factors));
    const auto target = ps.ratfunc();
    for (std::size_t k = 0; k < pfd.terms.size(); ++k) {
      for (int j = 0; j <= pfd.terms[k].combined.degree(); ++j) {
        auto bumped = pfd;
        bumped.terms[k].combined += Poly::monomial(frac(1, 3), static_cast<std::size_t>(j));
        CHECK_FALSE(equivalent(bumped.recombine(), target));
      }
    }
    auto bumped = pfd;
    bumped.polynomial_part += Poly{frac(1, 3)};
    CHECK_FALSE(equivalent(bumped.recombine(), target));
  }
}

TEST_CASE("unreduced input is refused") {
  // B = 1 - t/p over (2,2),(3,3): the (1 - p^-3 t^3) class numerator loses
  // its top multiplicity.
  const auto ps = make_series_with_factors(2, 2, Poly{1, frac(-1, 2)}, {{2, 2}, {3, 3}}).series;
  CHECK_THROWS_AS(closed_form(partial_fractions(ps, classify_poles(*ps.factors))), PreconditionError);
}

TEST_CASE("dominant term") {
  auto d1 = dominant_term(closed_form_of(fixture_series("example1", 2)));
  CHECK(d1.l_max == frac(7, 6));
  CHECK(d1.order == 1);
  CHECK(d1.period == 6);
  CHECK(d1.leading.size() == 6);
  auto d2 = dominant_term(closed_form_of(fixture_series("example2", 3)));
  CHECK(d2.l_max == frac(22, 15));
  CHECK(d2.order == 1);
  auto d3 = dominant_term(closed_form_of(fixture_series("line", 5)));
  CHECK(d3.l_max == 0);
  CHECK(d3.order == 1);
  CHECK_FALSE(d3.statement.empty());
}

TEST_CASE("pole bound lints") {
  CHECK(lint_bounds(closed_form_of(fixture_series("example1", 2))).empty());
  CHECK(lint_bounds(closed_form_of(fixture_series("example2", 2))).empty());
  // l = 2 - 7/2 = -3/2 < 1
  const auto bad = make_series_with_factors(2, 2, Poly{1}, {{7, 2}}).series;
  CHECK(lint_bounds(closed_form_of(bad)).size() == 1);
  // n = 3 with l = 3 - 3/2 = 3/2: fine for n/2, below 2 under the extra hypothesis
  const auto n3 = make_series_with_factors(2, 3, Poly{1}, {{3, 2}}).series;
  CHECK(lint_bounds(closed_form_of(n3)).empty());
  CHECK(lint_bounds(closed_form_of(n3), true).size() == 1);
}

TEST_CASE("closed form JSON roundtrip") {
  const auto cf = closed_form_of(fixture_series("example1", 2));
  const auto j = to_json(cf);
  CHECK(j["p"] == "2");
  CHECK(j["classes"][0]["l"] == "7/6");
  CHECK(j["classes"][0]["residues"][0]["g_coeffs"][0] == "3/2");
  const auto back = closed_form_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  for (long i = 0; i < 30; ++i) CHECK(evaluate(back, i) == evaluate(cf, i));
}

#include "zetacount/asymptotics.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <sstream>

#include "zetacount/errors.hpp"

namespace zetacount {

PoleClassification classify_poles(const FactorSpec& factors) {
  validate_factors(factors);
  std::map<Rational, PoleClass> by_ratio;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const Rational ratio = frac(factors[j].nu, factors[j].N);
    auto& cls = by_ratio[ratio];
    if (cls.members.empty()) {
      cls.ratio = ratio;
      cls.a = factors[j].nu;
      cls.b = factors[j].N;
    } else {
      cls.a = std::lcm(cls.a, factors[j].nu);
      cls.b = std::lcm(cls.b, factors[j].N);
    }
    cls.members.push_back(j);
  }
  PoleClassification out;
  out.source = factors;
  for (auto& [ratio, cls] : by_ratio) {
    cls.m = static_cast<unsigned>(cls.members.size());
    if (frac(cls.a, cls.b) != ratio) throw std::logic_error("classify_poles: lcm ratio differs from the class ratio");
    out.classes.push_back(std::move(cls));
  }
  return out;
}

Poly class_base(const Integer& p, const PoleClass& cls) {
  return Poly{1} - Poly::monomial(rpow(p, -static_cast<long>(cls.a)), cls.b);
}

namespace {

Poly class_denominator(const Integer& p, const PoleClass& cls) { return pow(class_base(p, cls), cls.m); }

Poly all_class_denominators(const Integer& p, const PoleClassification& cls) {
  Poly q{1};
  for (const auto& c : cls.classes) q = q * class_denominator(p, c);
  return q;
}

// binom(e + l - 1, l - 1) as a polynomial in e, ascending coefficients.
std::vector<Rational> binomial_in_e(unsigned l) {
  Poly acc{1};
  for (unsigned j = 1; j < l; ++j) acc = acc * Poly{Rational(j), Rational(1)} * frac(1, j);
  std::vector<Rational> out(acc.coefficients().begin(), acc.coefficients().end());
  if (out.empty()) out.push_back(0);
  return out;
}

std::vector<Rational> trimmed(std::vector<Rational> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

RationalFunction common_denominator_form(const PoincareSeries& ps, const PoleClassification& cls) {
  if (!ps.factors) throw PreconditionError("series has no factored denominator; pole classes are unavailable");
  if (*ps.factors != cls.source) throw PreconditionError("classification was built from a different factor list");
  const Poly q = all_class_denominators(ps.p, cls);
  const Poly scale = exact_div(q, ps.denominator);
  return RationalFunction(ps.numerator * scale, q);
}

RationalFunction PartialFractionDecomposition::recombine() const {
  RationalFunction acc(polynomial_part);
  for (std::size_t k = 0; k < terms.size(); ++k)
    acc = acc + RationalFunction(terms[k].combined, class_denominator(p, classification.classes[k]));
  return acc.canonical();
}

PartialFractionDecomposition decompose(const Integer& p, unsigned n, const Poly& numerator,
                                       const PoleClassification& cls) {
  PartialFractionDecomposition out;
  out.p = p;
  out.n = n;
  out.classification = cls;

  std::vector<Poly> dens;
  for (const auto& c : cls.classes) dens.push_back(class_denominator(p, c));
  Poly q{1};
  for (const auto& d : dens) q = q * d;

  auto [c0, rem] = divrem(numerator, q);
  out.polynomial_part = c0;
  out.degree = numerator.is_zero() ? INT_MIN : numerator.degree() - q.degree();

  for (std::size_t k = 0; k < cls.classes.size(); ++k) {
    const Poly others = exact_div(q, dens[k]);
    ExtendedGcd eg = extended_gcd(others, dens[k]);
    if (eg.gcd.degree() != 0) throw std::logic_error("class denominators are not pairwise coprime");
    ClassTerms terms;
    terms.combined = divrem(rem * eg.s, dens[k]).remainder;

    const Poly base = class_base(p, cls.classes[k]);
    const unsigned m = cls.classes[k].m;
    terms.nested.resize(m);
    Poly cur = terms.combined;
    for (unsigned l = m; l >= 1; --l) {
      auto [qq, digit] = divrem(cur, base);
      terms.nested[l - 1] = std::move(digit);
      cur = std::move(qq);
    }
    if (!cur.is_zero()) throw std::logic_error("nested expansion left a nonzero remainder");
    out.terms.push_back(std::move(terms));
  }
  if (out.degree >= 0 && out.polynomial_part.degree() != out.degree)
    throw std::logic_error("polynomial part degree disagrees with deg P");
  return out;
}

PartialFractionDecomposition partial_fractions(const PoincareSeries& ps, const PoleClassification& cls) {
  const RationalFunction common = common_denominator_form(ps, cls);
  PartialFractionDecomposition pfd = decompose(ps.p, ps.n, common.numerator(), cls);
  for (std::size_t k = 0; k < cls.classes.size(); ++k) {
    const auto& c = cls.classes[k];
    if (pfd.terms[k].nested[c.m - 1].is_zero())
      throw PreconditionError("pole class " + to_string(c.ratio) + " (a=" + std::to_string(c.a) + ", b=" +
                              std::to_string(c.b) + ") does not reach multiplicity " + std::to_string(c.m) +
                              ": the numerator cancels the common roots of its factors; reduce the factor list");
  }
  return pfd;
}

ClosedForm closed_form(const PartialFractionDecomposition& pfd) {
  ClosedForm cf;
  cf.p = pfd.p;
  cf.n = pfd.n;
  cf.threshold = pfd.degree;
  const auto& classes = pfd.classification.classes;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    ClassFormula formula;
    formula.a = c.a;
    formula.b = c.b;
    formula.m = c.m;
    formula.l = Rational(pfd.n) - frac(c.a, c.b);

    std::vector<std::vector<Rational>> binoms;
    for (unsigned l = 1; l <= c.m; ++l) binoms.push_back(binomial_in_e(l));

    int max_degree = -1;
    for (unsigned d = 0; d < c.b; ++d) {
      std::vector<Rational> g(c.m);
      for (unsigned l = 1; l <= c.m; ++l) {
        const Rational coeff = pfd.terms[k].nested[l - 1].coeff(d);
        if (coeff == 0) continue;
        for (std::size_t j = 0; j < binoms[l - 1].size(); ++j) g[j] += coeff * binoms[l - 1][j];
      }
      g = trimmed(std::move(g));
      max_degree = std::max(max_degree, static_cast<int>(g.size()) - 1);
      const Rational shift = rpow(pfd.p, static_cast<long>((static_cast<unsigned long>(d) * c.a) / c.b));
      std::vector<Rational> ghat = g;
      for (auto& x : ghat) x *= shift;
      formula.residues.push_back({d, std::move(g), std::move(ghat)});
    }
    if (max_degree != static_cast<int>(c.m) - 1)
      throw PreconditionError("residue polynomials of class " + to_string(c.ratio) + " have maximal degree " +
                              std::to_string(max_degree) + ", expected m - 1 = " + std::to_string(c.m - 1));
    cf.classes.push_back(std::move(formula));
  }
  for (std::size_t k = 1; k < cf.classes.size(); ++k)
    if (!(cf.classes[k].l < cf.classes[k - 1].l)) throw std::logic_error("growth exponents not strictly decreasing");
  return cf;
}

Rational eval_in_e(const std::vector<Rational>& coeffs, const Rational& e) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * e + *it;
  return acc;
}

Rational evaluate_rational(const ClosedForm& cf, long i) {
  if (i < 0) throw PreconditionError("index must be nonnegative");
  Rational acc = 0;
  for (const auto& c : cf.classes) {
    const long d = i % static_cast<long>(c.b);
    const long e = (i - d) / static_cast<long>(c.b);
    const Rational g = eval_in_e(c.residues[static_cast<std::size_t>(d)].g, Rational(e));
    if (g == 0) continue;
    acc += g * rpow(cf.p, static_cast<long>(cf.n) * i - static_cast<long>(c.a) * e);
  }
  return acc;
}

Integer evaluate(const ClosedForm& cf, long i) {
  if (i <= cf.threshold)
    throw PreconditionError("closed form is valid only for i > " + std::to_string(cf.threshold));
  const Rational v = evaluate_rational(cf, i);
  if (v.get_den() != 1 || v < 0)
    throw PreconditionError("closed form gives M_" + std::to_string(i) + " = " + to_string(v) +
                            ", not a nonnegative integer; the input series is invalid");
  return v.get_num();
}

DominantTerm dominant_term(const ClosedForm& cf) {
  if (cf.classes.empty()) throw PreconditionError("no pole classes: M_i vanishes for i > " + std::to_string(cf.threshold));
  const auto& top = cf.classes.front();
  DominantTerm out;
  out.l_max = top.l;
  out.period = top.b;
  unsigned order = 0;
  for (const auto& r : top.residues) order = std::max(order, static_cast<unsigned>(r.ghat.size()));
  out.order = order;
  const Rational scale = rpow(Integer(top.b), -static_cast<long>(order - 1));
  std::ostringstream os;
  os << "largest growth exponent l = " << to_string(top.l) << " (pole real part " << to_string(top.l - cf.n)
     << "), order " << order << "\n";
  for (const auto& r : top.residues) {
    Rational lead = r.ghat.size() == order ? r.ghat.back() * scale : Rational(0);
    out.leading.push_back(lead);
    os << "  i = " << r.d << " mod " << top.b << ": M_i ~ " << to_string(lead);
    if (order > 1) os << " * i^" << (order - 1);
    os << " * p^ceil(" << to_string(top.l) << " i)";
    if (lead == 0) os << "  (class vanishes on this residue)";
    os << "\n";
  }
  out.statement = os.str();
  return out;
}

std::vector<std::string> lint_bounds(const ClosedForm& cf, bool assume_n3_no_multiplicity_two) {
  std::vector<std::string> out;
  const Rational half = frac(cf.n, 2);
  for (const auto& c : cf.classes) {
    Rational l = c.l;
    if (l < half)
      out.push_back("class " + std::to_string(c.a) + "/" + std::to_string(c.b) + ": l = " + to_string(l) +
                    " < n/2 = " + to_string(half) +
                    "; pole real part below -n/2, probably an input error");
    if (assume_n3_no_multiplicity_two && cf.n == 3 && l < 2)
      out.push_back("class " + std::to_string(c.a) + "/" + std::to_string(c.b) + ": l = " + to_string(l) +
                    " < 2 although f has no singular point of multiplicity 2; pole real part below -1");
  }
  return out;
}

}  // namespace zetacount

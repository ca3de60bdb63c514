#include "zetacount/report.hpp"

#include <numeric>
#include <sstream>

namespace zetacount {

namespace {

std::string e_poly(const std::vector<Rational>& coeffs) {
  return to_string(Poly(coeffs), "e");
}

std::string linear(long alpha, long beta, const char* var) {
  std::ostringstream os;
  if (alpha == 0) {
    os << beta;
    return os.str();
  }
  if (alpha == 1)
    os << var;
  else if (alpha == -1)
    os << "-" << var;
  else
    os << alpha << var;
  if (beta > 0) os << "+" << beta;
  if (beta < 0) os << beta;
  return os.str();
}

// Composes g(q e + s).
std::vector<Rational> compose_affine(const std::vector<Rational>& g, long q, long s) {
  Poly acc;
  const Poly x{Rational(s), Rational(q)};
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * x + Poly::constant(*it);
  return {acc.coefficients().begin(), acc.coefficients().end()};
}

}  // namespace

std::string render_power_term(const Rational& c, const Integer& p, long alpha, long beta) {
  if (c == 0) return "0";
  Integer num = c.get_num(), den = c.get_den();
  long shift = 0;
  while (num % p == 0) {
    num /= p;
    ++shift;
  }
  while (den % p == 0) {
    den /= p;
    --shift;
  }
  std::ostringstream os;
  Rational unit(num, den);
  unit.canonicalize();
  if (unit == -1)
    os << "-";
  else if (unit != 1)
    os << to_string(unit) << "*";
  os << p.get_str() << "^(" << linear(alpha, beta + shift, "e") << ")";
  return os.str();
}

std::string render_counts(const CountTable& table) {
  std::ostringstream os;
  os << "p = " << table.p.get_str() << ", n = " << table.n << "\n";
  for (std::size_t i = 0; i < table.counts.size(); ++i) os << "M_" << i << " = " << table.counts[i].get_str() << "\n";
  return os.str();
}

std::string render_series(const PoincareSeries& ps) {
  std::ostringstream os;
  os << "P(t) = (" << to_string(ps.numerator) << ")";
  if (ps.factors) {
    if (ps.factors->empty()) os << " / 1";
    for (const auto& f : *ps.factors)
      os << " / (1 - " << ps.p.get_str() << "^-" << f.nu << " t" << (f.N > 1 ? "^" + std::to_string(f.N) : "") << ")";
  } else {
    os << " / (" << to_string(ps.denominator) << ")";
  }
  os << "\n";
  return os.str();
}

std::string render_classes(const PoleClassification& cls, unsigned n) {
  std::ostringstream os;
  for (std::size_t k = 0; k < cls.classes.size(); ++k) {
    const auto& c = cls.classes[k];
    os << "class " << (k + 1) << ": nu/N = " << to_string(c.ratio) << ", a = " << c.a << ", b = " << c.b
       << ", m = " << c.m << ", l = " << to_string(Rational(n) - c.ratio) << ", factors";
    for (auto idx : c.members) os << " (" << cls.source[idx].nu << "," << cls.source[idx].N << ")";
    os << "\n";
  }
  if (cls.classes.empty()) os << "no pole classes\n";
  return os.str();
}

std::string render_decomposition(const PartialFractionDecomposition& pfd) {
  std::ostringstream os;
  os << "deg P = " << pfd.degree << "\n";
  os << "C_0(t) = " << to_string(pfd.polynomial_part) << "\n";
  for (std::size_t k = 0; k < pfd.terms.size(); ++k) {
    const auto& c = pfd.classification.classes[k];
    os << "class " << (k + 1) << " (1 - " << pfd.p.get_str() << "^-" << c.a << " t^" << c.b << ")^" << c.m << ":\n";
    os << "  C_" << (k + 1) << "(t) = " << to_string(pfd.terms[k].combined) << "\n";
    for (std::size_t l = pfd.terms[k].nested.size(); l >= 1; --l)
      os << "  C_" << (k + 1) << "," << l << "(t) = " << to_string(pfd.terms[k].nested[l - 1]) << "\n";
  }
  return os.str();
}

std::string render_closed_form(const ClosedForm& cf) {
  std::ostringstream os;
  os << "p = " << cf.p.get_str() << ", n = " << cf.n << "; formulas hold for i > " << cf.threshold << "\n";
  for (std::size_t k = 0; k < cf.classes.size(); ++k) {
    const auto& c = cf.classes[k];
    os << "class " << (k + 1) << ": a = " << c.a << ", b = " << c.b << ", m = " << c.m << ", l = " << to_string(c.l)
       << "\n";
    for (const auto& r : c.residues) {
      os << "  i = " << c.b << "e+" << r.d << ": g(e) = " << e_poly(r.g) << ", term g(e) * p^(" << cf.n << "i - "
         << c.a << "e)"
         << "; normalized " << e_poly(r.ghat) << " * p^ceil(" << to_string(c.l) << " i)\n";
    }
  }
  if (cf.classes.empty()) {
    os << "M_i = 0 for i > " << cf.threshold << "\n";
    return os.str();
  }

  unsigned long L = 1;
  for (const auto& c : cf.classes) L = std::lcm(L, static_cast<unsigned long>(c.b));
  if (L > 60) return os.str();
  os << "combined, e >= 0:\n";
  for (unsigned long r = 0; r < L; ++r) {
    os << "  M_" << linear(static_cast<long>(L), static_cast<long>(r), "e") << " = ";
    bool first = true;
    for (const auto& c : cf.classes) {
      const long b = c.b;
      const long d = static_cast<long>(r) % b;
      const long q = static_cast<long>(L) / b;
      const long s = (static_cast<long>(r) - d) / b;
      // i = L e + r, class index e_k = q e + s.
      const auto g = compose_affine(c.residues[static_cast<std::size_t>(d)].g, q, s);
      const long alpha = static_cast<long>(cf.n) * static_cast<long>(L) - static_cast<long>(c.a) * q;
      const long beta = static_cast<long>(cf.n) * static_cast<long>(r) - static_cast<long>(c.a) * s;
      std::string term;
      if (g.empty()) continue;
      if (g.size() == 1) {
        term = render_power_term(g[0], cf.p, alpha, beta);
      } else {
        term = "(" + e_poly(g) + ")*" + cf.p.get_str() + "^(" + linear(alpha, beta, "e") + ")";
      }
      if (!first) {
        if (term.front() == '-')
          term = "- " + term.substr(1);
        else
          term = "+ " + term;
        os << " ";
      }
      os << term;
      first = false;
    }
    if (first) os << "0";
    os << "\n";
  }
  return os.str();
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& r : report.rows)
    os << "i = " << r.i << ": predicted " << to_string(r.predicted) << ", counted " << r.counted.get_str() << "  "
       << (r.pass ? "ok" : "MISMATCH") << "\n";
  os << (report.passed() ? "all " + std::to_string(report.rows.size()) + " rows agree\n"
                         : std::to_string(report.failures()) + " mismatches\n");
  return os.str();
}

}  // namespace zetacount

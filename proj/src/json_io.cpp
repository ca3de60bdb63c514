#include "zetacount/json_io.hpp"

#include "zetacount/errors.hpp"

namespace zetacount {

namespace {

Json strings(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json poly_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(to_string(c));
  return out;
}

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw ParseError("expected an exact rational string, got " + j.dump());
}

Integer integer_field(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  throw ParseError("expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

unsigned unsigned_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<unsigned>();
}

std::vector<Rational> rational_array(const Json& j, const char* key) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : arr) out.push_back(rational_field(e));
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const LatticePolynomial& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"coeff", c.get_str()}, {"exps", e}});
  return {{"vars", f.variable_count()}, {"terms", terms}};
}

LatticePolynomial lattice_poly_from_json(const Json& j) {
  try {
    const unsigned n = unsigned_field(j, "vars");
    std::map<Exponents, Integer> terms;
    for (const auto& t : field(j, "terms")) {
      Exponents e = field(t, "exps").get<Exponents>();
      terms[e] += integer_field(field(t, "coeff"));
    }
    return LatticePolynomial(n, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad polynomial JSON: ") + e.what());
  }
}

Json to_json(const CountTable& table) {
  Json counts = Json::array();
  for (const auto& m : table.counts) counts.push_back(m.get_str());
  return {{"p", table.p.get_str()}, {"n", table.n}, {"counts", counts}};
}

CountTable count_table_from_json(const Json& j) {
  CountTable t{integer_field(field(j, "p")), unsigned_field(j, "n"), {}};
  for (const auto& m : field(j, "counts")) t.counts.push_back(integer_field(m));
  return t;
}

Json to_json(const FactorSpec& factors) {
  Json out = Json::array();
  for (const auto& f : factors) out.push_back({{"nu", f.nu}, {"N", f.N}});
  return out;
}

FactorSpec factor_spec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("denominator_factors must be an array");
  FactorSpec out;
  for (const auto& f : j) out.push_back({unsigned_field(f, "nu"), unsigned_field(f, "N")});
  validate_factors(out);
  return out;
}

Json to_json(const PoincareSeries& ps) {
  Json out = {{"p", ps.p.get_str()}, {"n", ps.n}, {"numerator", poly_json(ps.numerator)}};
  if (ps.factors)
    out["denominator_factors"] = to_json(*ps.factors);
  else
    out["denominator"] = poly_json(ps.denominator);
  return out;
}

namespace {

struct RawSeries {
  Integer p;
  unsigned n;
  Poly numerator;
  std::optional<FactorSpec> factors;
  std::optional<Poly> denominator;
};

RawSeries read_raw_series(const Json& j) {
  try {
    RawSeries r{integer_field(field(j, "p")), unsigned_field(j, "n"), Poly(rational_array(j, "numerator")), {}, {}};
    if (!is_prime(r.p)) throw PreconditionError(r.p.get_str() + " is not prime");
    if (j.contains("denominator_factors"))
      r.factors = factor_spec_from_json(j.at("denominator_factors"));
    else if (j.contains("denominator"))
      r.denominator = Poly(rational_array(j, "denominator"));
    else
      throw ParseError("series JSON needs 'denominator_factors' or 'denominator'");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad series JSON: ") + e.what());
  }
}

std::string function_kind(const Json& j) {
  if (!j.is_object()) throw ParseError("series JSON must be an object");
  if (!j.contains("function")) return "P";
  if (!j.at("function").is_string()) throw ParseError("'function' must be \"P\" or \"Z\"");
  auto k = j.at("function").get<std::string>();
  if (k != "P" && k != "Z") throw ParseError("'function' must be \"P\" or \"Z\"");
  return k;
}

}  // namespace

SeriesBuild series_from_json(const Json& j) {
  if (function_kind(j) != "P") throw ParseError("expected a Poincare series (function \"P\")");
  RawSeries r = read_raw_series(j);
  if (r.factors) {
    SeriesBuild b = make_series_with_factors(r.p, r.n, std::move(r.numerator), *r.factors);
    return b;
  }
  return make_series_raw(r.p, r.n, RationalFunction(r.numerator, *r.denominator));
}

Json zeta_to_json(const Integer& p, unsigned n, const Poly& numerator, const Poly& denominator,
                  const std::optional<FactorSpec>& factors) {
  Json out = {{"function", "Z"}, {"p", p.get_str()}, {"n", n}, {"numerator", poly_json(numerator)}};
  if (factors)
    out["denominator_factors"] = to_json(*factors);
  else
    out["denominator"] = poly_json(denominator);
  return out;
}

ZetaInput zeta_from_json(const Json& j) {
  if (function_kind(j) != "Z") throw ParseError("expected a zeta function (function \"Z\")");
  RawSeries r = read_raw_series(j);
  Poly den = r.factors ? factor_product(r.p, *r.factors) : *r.denominator;
  return ZetaInput{r.p, r.n, RationalFunction(r.numerator, den), r.factors};
}

Json to_json(const PoleClassification& cls, unsigned n) {
  Json classes = Json::array();
  for (const auto& c : cls.classes) {
    Json members = Json::array();
    for (auto idx : c.members) members.push_back({{"nu", cls.source[idx].nu}, {"N", cls.source[idx].N}});
    classes.push_back({{"ratio", to_string(c.ratio)},
                       {"a", c.a},
                       {"b", c.b},
                       {"m", c.m},
                       {"l", to_string(Rational(n) - c.ratio)},
                       {"members", members}});
  }
  return {{"n", n}, {"classes", classes}};
}

Json to_json(const PartialFractionDecomposition& pfd) {
  Json classes = Json::array();
  for (std::size_t k = 0; k < pfd.terms.size(); ++k) {
    const auto& c = pfd.classification.classes[k];
    Json nested = Json::array();
    for (std::size_t l = 0; l < pfd.terms[k].nested.size(); ++l)
      nested.push_back({{"l", l + 1}, {"coeffs", poly_json(pfd.terms[k].nested[l])}});
    classes.push_back({{"a", c.a},
                       {"b", c.b},
                       {"m", c.m},
                       {"c_k", poly_json(pfd.terms[k].combined)},
                       {"nested", nested}});
  }
  return {{"p", pfd.p.get_str()},
          {"n", pfd.n},
          {"degree", pfd.degree},
          {"c0", poly_json(pfd.polynomial_part)},
          {"classes", classes}};
}

Json to_json(const ClosedForm& cf) {
  Json classes = Json::array();
  for (const auto& c : cf.classes) {
    Json residues = Json::array();
    for (const auto& r : c.residues)
      residues.push_back({{"d", r.d}, {"g_coeffs", strings(r.g)}, {"ghat_coeffs", strings(r.ghat)}});
    classes.push_back({{"a", c.a}, {"b", c.b}, {"m", c.m}, {"l", to_string(c.l)}, {"residues", residues}});
  }
  return {{"p", cf.p.get_str()}, {"n", cf.n}, {"threshold", cf.threshold}, {"classes", classes}};
}

ClosedForm closed_form_from_json(const Json& j) {
  try {
    ClosedForm cf;
    cf.p = integer_field(field(j, "p"));
    if (!is_prime(cf.p)) throw PreconditionError(cf.p.get_str() + " is not prime");
    cf.n = unsigned_field(j, "n");
    cf.threshold = field(j, "threshold").get<long>();
    for (const auto& c : field(j, "classes")) {
      ClassFormula f;
      f.a = unsigned_field(c, "a");
      f.b = unsigned_field(c, "b");
      f.m = unsigned_field(c, "m");
      if (f.a == 0 || f.b == 0 || f.m == 0) throw ParseError("class needs positive a, b, m");
      f.l = Rational(cf.n) - frac(f.a, f.b);
      if (c.contains("l") && rational_field(c.at("l")) != f.l) throw ParseError("class l disagrees with n - a/b");
      for (const auto& r : field(c, "residues")) {
        ResiduePolynomial rp;
        rp.d = unsigned_field(r, "d");
        rp.g = rational_array(r, "g_coeffs");
        rp.ghat = r.contains("ghat_coeffs") ? rational_array(r, "ghat_coeffs") : rp.g;
        f.residues.push_back(std::move(rp));
      }
      if (f.residues.size() != f.b) throw ParseError("class needs exactly b residue polynomials");
      for (unsigned d = 0; d < f.b; ++d)
        if (f.residues[d].d != d) throw ParseError("residues must be listed for d = 0..b-1 in order");
      cf.classes.push_back(std::move(f));
    }
    return cf;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad closed-form JSON: ") + e.what());
  }
}

Json to_json(const DominantTerm& dt) {
  return {{"l_max", to_string(dt.l_max)}, {"order", dt.order}, {"period", dt.period}, {"leading", strings(dt.leading)}};
}

Json to_json(const ValidationReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"i", r.i}, {"predicted", to_string(r.predicted)}, {"counted", r.counted.get_str()}, {"pass", r.pass}});
  return {{"passed", report.passed()}, {"failures", report.failures()}, {"rows", rows}};
}

}  // namespace zetacount

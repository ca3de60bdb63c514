#pragma once

#include <json.hpp>

#include "zetacount/asymptotics.hpp"
#include "zetacount/counting.hpp"
#include "zetacount/lattice_poly.hpp"
#include "zetacount/zeta_link.hpp"

namespace zetacount {

using Json = nlohmann::ordered_json;

/// Parses JSON text, mapping syntax errors to ParseError.
Json parse_json(std::string_view text);

Json to_json(const LatticePolynomial& f);
/// {"vars": n, "terms": [{"coeff": "-1", "exps": [3, 0]}, ...]}
LatticePolynomial lattice_poly_from_json(const Json& j);

Json to_json(const CountTable& table);
CountTable count_table_from_json(const Json& j);

/// {"p": "2", "n": 2, "numerator": [...], "denominator_factors": [{"nu":5,"N":6}, ...]}
/// or with "denominator": [...] when no factorisation is known.
Json to_json(const PoincareSeries& ps);
/// Accepts the same schema; an optional "function": "P" | "Z" field is
/// rejected here unless it is "P".
SeriesBuild series_from_json(const Json& j);

/// Z_f(t) in the same schema with "function": "Z".
Json zeta_to_json(const Integer& p, unsigned n, const Poly& numerator, const Poly& denominator,
                  const std::optional<FactorSpec>& factors);

struct ZetaInput {
  Integer p;
  unsigned n = 0;
  RationalFunction z;
  std::optional<FactorSpec> factors;
};
ZetaInput zeta_from_json(const Json& j);

Json to_json(const FactorSpec& factors);
FactorSpec factor_spec_from_json(const Json& j);

Json to_json(const PoleClassification& cls, unsigned n);
Json to_json(const PartialFractionDecomposition& pfd);

/// {"p":"2","n":2,"threshold":-1,"classes":[{"a":5,"b":6,"m":1,"l":"7/6",
///   "residues":[{"d":0,"g_coeffs":[...],"ghat_coeffs":[...]}, ...]}, ...]}
Json to_json(const ClosedForm& cf);
ClosedForm closed_form_from_json(const Json& j);

Json to_json(const DominantTerm& dt);
Json to_json(const ValidationReport& report);

}  // namespace zetacount

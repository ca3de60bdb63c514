// Low-level extension module. Values cross the boundary as JSON text and
// decimal strings; the zetacount package converts them to Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetacount/asymptotics.hpp"
#include "zetacount/counting.hpp"
#include "zetacount/errors.hpp"
#include "zetacount/fixtures.hpp"
#include "zetacount/json_io.hpp"
#include "zetacount/zeta_link.hpp"

namespace py = pybind11;
namespace zc = zetacount;

namespace {

std::vector<std::string> decimal(const std::vector<zc::Integer>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

std::vector<std::string> count(const std::string& poly, const std::string& p, unsigned max_i, bool naive,
                               std::uint64_t node_budget, std::uint64_t eval_budget, unsigned threads) {
  zc::ProblemInstance inst(zc::LatticePolynomial::parse(poly), zc::parse_integer(p));
  py::gil_scoped_release release;
  if (naive) return decimal(zc::count_naive_table(inst, max_i, eval_budget).counts);
  zc::CountOptions o;
  o.node_budget = node_budget;
  o.eval_budget = eval_budget;
  o.threads = threads;
  return decimal(zc::count_lifting(inst, max_i, o).counts);
}

py::tuple fit(const std::vector<std::string>& counts, const std::string& p, unsigned n, const std::string& factors,
              std::optional<unsigned> degree_bound, unsigned slack) {
  zc::CountTable table{zc::parse_integer(p), n, {}};
  for (const auto& c : counts) table.counts.push_back(zc::parse_integer(c));
  zc::FitOptions o;
  o.degree_bound = degree_bound;
  o.slack = slack;
  auto build = zc::fit_numerator(table, zc::parse_factor_spec(factors), o);
  return py::make_tuple(zc::to_json(build.series).dump(), build.warnings);
}

zc::ClosedForm closed_form_of(const std::string& series_json) {
  const auto ps = zc::series_from_json(zc::parse_json(series_json)).series;
  if (!ps.factors) throw zc::PreconditionError("closed forms need denominator_factors");
  return zc::closed_form(zc::partial_fractions(ps, zc::classify_poles(*ps.factors)));
}

std::string fixture_series(const std::string& name, const std::string& p) {
  return zc::to_json(zc::find_fixture(name).poincare(zc::parse_integer(p))).dump();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : zc::fixtures()) out.push_back(f.name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_zetacount, m) {
  m.doc() = "exact counts of polynomial congruences mod p^i and their closed forms";

  static py::exception<zc::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<zc::BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<zc::PreconditionError> precondition_error(m, "PreconditionError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const zc::ParseError& x) {
      parse_error(x.what());
    } catch (const zc::BudgetExceeded& x) {
      budget_error(x.what());
    } catch (const zc::PreconditionError& x) {
      precondition_error(x.what());
    }
  });

  m.def("count", &count, py::arg("poly"), py::arg("p"), py::arg("max_i"), py::arg("naive") = false,
        py::arg("node_budget") = 10'000'000, py::arg("eval_budget") = 100'000'000, py::arg("threads") = 1);
  m.def("fit", &fit, py::arg("counts"), py::arg("p"), py::arg("n"), py::arg("factors"),
        py::arg("degree_bound") = std::nullopt, py::arg("slack") = 5);
  m.def("closed_form", [](const std::string& s) { return zc::to_json(closed_form_of(s)).dump(); });
  m.def("evaluate", [](const std::string& cf, long i) {
    return zc::evaluate(zc::closed_form_from_json(zc::parse_json(cf)), i).get_str();
  });
  m.def("series_counts", [](const std::string& s, std::size_t upto) {
    return decimal(zc::counts_from_series(zc::series_from_json(zc::parse_json(s)).series, upto).counts);
  });
  m.def("to_z", [](const std::string& s) {
    const auto ps = zc::series_from_json(zc::parse_json(s)).series;
    const auto z = zc::z_from_p(ps);
    if (ps.factors)
      return zc::zeta_to_json(ps.p, ps.n, zc::z_numerator_over_factors(ps), zc::factor_product(ps.p, *ps.factors),
                              ps.factors).dump();
    return zc::zeta_to_json(ps.p, ps.n, z.numerator(), z.denominator(), std::nullopt).dump();
  });
  m.def("to_p", [](const std::string& s) {
    auto in = zc::zeta_from_json(zc::parse_json(s));
    return zc::to_json(zc::p_from_z(in.z, in.p, in.n, in.factors)).dump();
  });
  m.def("fixture_series", &fixture_series);
  m.def("fixture_names", &fixture_names);
}

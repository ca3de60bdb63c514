// zetacount: solution counts of polynomial congruences and closed forms
// for them from the Poincare series.
//
// Exit codes: 0 ok, 1 verification failure, 2 input/parse error,
// 3 budget exceeded, 4 mathematical precondition violation, 5 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "zetacount/asymptotics.hpp"
#include "zetacount/counting.hpp"
#include "zetacount/errors.hpp"
#include "zetacount/fixtures.hpp"
#include "zetacount/json_io.hpp"
#include "zetacount/report.hpp"
#include "zetacount/zeta_link.hpp"

namespace zc = zetacount;

namespace {

enum ExitCode : int { kOk = 0, kVerification = 1, kInput = 2, kBudget = 3, kPrecondition = 4, kInternal = 5 };

struct GlobalOptions {
  bool json = false;
  std::string prime;
  std::uint64_t budget_nodes = 10'000'000;
  std::uint64_t budget_evals = 100'000'000;
  unsigned threads = 0;
};

struct PolyOptions {
  std::string poly;
  std::string poly_json;
  unsigned vars = 0;
};

struct SeriesSource {
  std::string series_file;
  std::string fixture;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw zc::ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const zc::Json& j) { std::cout << j.dump(2) << "\n"; }

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

zc::Integer require_prime(const GlobalOptions& g) {
  if (g.prime.empty()) throw zc::ParseError("a prime is required (-p)");
  return zc::parse_integer(g.prime);
}

zc::CountOptions count_options(const GlobalOptions& g) {
  zc::CountOptions o;
  o.node_budget = g.budget_nodes;
  o.eval_budget = g.budget_evals;
  o.threads = g.threads;
  return o;
}

zc::LatticePolynomial load_poly(const PolyOptions& po, const zc::Fixture* fixture = nullptr) {
  if (!po.poly_json.empty()) return zc::lattice_poly_from_json(zc::parse_json(read_input(po.poly_json)));
  if (!po.poly.empty()) return zc::LatticePolynomial::parse(po.poly, po.vars);
  if (fixture) return zc::LatticePolynomial::parse(fixture->polynomial, po.vars);
  throw zc::ParseError("a polynomial is required (-f or --poly-json)");
}

const zc::Fixture* fixture_or_null(const std::string& name) {
  return name.empty() ? nullptr : &zc::find_fixture(name);
}

// Either --series FILE or --fixture NAME (with -p).
zc::SeriesBuild load_series(const SeriesSource& src, const GlobalOptions& g) {
  if (!src.series_file.empty()) return zc::series_from_json(zc::parse_json(read_input(src.series_file)));
  if (!src.fixture.empty()) {
    const auto& fx = zc::find_fixture(src.fixture);
    const zc::Integer p = require_prime(g);
    if (!zc::is_prime(p)) throw zc::PreconditionError(p.get_str() + " is not prime");
    return {fx.poincare(p), {}};
  }
  throw zc::ParseError("a series is required (--series FILE or --fixture NAME)");
}

void add_series_source(CLI::App* cmd, SeriesSource& src) {
  auto* s = cmd->add_option("--series", src.series_file, "Poincare series JSON file ('-' for stdin)");
  auto* f = cmd->add_option("--fixture", src.fixture, "bundled fixture name");
  s->excludes(f);
}

void add_poly(CLI::App* cmd, PolyOptions& po) {
  auto* a = cmd->add_option("-f,--poly", po.poly, "polynomial, e.g. \"y^2 - x^3\"");
  auto* b = cmd->add_option("--poly-json", po.poly_json, "polynomial JSON file");
  a->excludes(b);
  cmd->add_option("--vars", po.vars, "number of variables (default: inferred)");
}

// Rethrows with a stage label, preserving the error category.
template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const zc::ParseError& e) {
    throw zc::ParseError("[" + name + "] " + e.what());
  } catch (const zc::BudgetExceeded& e) {
    throw zc::BudgetExceeded("[" + name + "] " + e.what());
  } catch (const zc::PreconditionError& e) {
    throw zc::PreconditionError("[" + name + "] " + e.what());
  }
}

struct ClosedFormBundle {
  zc::PoleClassification classes;
  zc::PartialFractionDecomposition pfd;
  zc::ClosedForm cf;
};

ClosedFormBundle build_closed_form(const zc::PoincareSeries& ps) {
  if (!ps.factors) throw zc::PreconditionError("closed forms need denominator_factors");
  auto classes = stage("classes", [&] { return zc::classify_poles(*ps.factors); });
  auto pfd = stage("decompose", [&] { return zc::partial_fractions(ps, classes); });
  auto cf = stage("closed-form", [&] { return zc::closed_form(pfd); });
  return {std::move(classes), std::move(pfd), std::move(cf)};
}

struct ClosedFormCheck {
  zc::Json rows = zc::Json::array();
  std::size_t failures = 0;
  std::string text;
};

ClosedFormCheck check_closed_form(const zc::ClosedForm& cf, const zc::CountTable& table) {
  ClosedFormCheck out;
  std::ostringstream os;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    if (static_cast<long>(i) <= cf.threshold) continue;
    const zc::Rational v = zc::evaluate_rational(cf, static_cast<long>(i));
    const bool ok = v == zc::Rational(table.counts[i]);
    if (!ok) ++out.failures;
    out.rows.push_back({{"i", i}, {"closed_form", zc::to_string(v)}, {"counted", table.counts[i].get_str()}, {"pass", ok}});
    os << "M_" << i << ": closed form " << zc::to_string(v) << ", counted " << table.counts[i].get_str() << "  "
       << (ok ? "ok" : "MISMATCH") << "\n";
  }
  out.text = os.str();
  return out;
}

// ---------------------------------------------------------------------------

int run_count(const GlobalOptions& g, const PolyOptions& po, unsigned max_i, bool naive, bool compare,
              const std::string& mode) {
  zc::ProblemInstance inst(load_poly(po), require_prime(g));
  auto opts = count_options(g);
  if (mode == "graded")
    opts.short_circuit = zc::ShortCircuit::graded;
  else if (mode == "none")
    opts.short_circuit = zc::ShortCircuit::none;
  else if (mode == "nonsingular")
    opts.short_circuit = zc::ShortCircuit::nonsingular;

  if (compare) {
    auto lifted = zc::count_lifting(inst, max_i, opts);
    auto brute = zc::count_naive_table(inst, max_i, g.budget_evals);
    bool same = lifted.counts == brute.counts;
    if (g.json) {
      emit({{"lifting", zc::to_json(lifted)}, {"naive", zc::to_json(brute)}, {"agree", same}});
    } else {
      for (std::size_t i = 0; i <= max_i; ++i)
        std::cout << "M_" << i << " = " << lifted.counts[i].get_str() << " (lifting), " << brute.counts[i].get_str()
                  << " (naive)" << (lifted.counts[i] == brute.counts[i] ? "" : "  MISMATCH") << "\n";
    }
    return same ? kOk : kVerification;
  }
  auto table = naive ? zc::count_naive_table(inst, max_i, g.budget_evals) : zc::count_lifting(inst, max_i, opts);
  if (g.json)
    emit(zc::to_json(table));
  else
    std::cout << zc::render_counts(table);
  return kOk;
}

int run_fit(const GlobalOptions& g, const PolyOptions& po, std::optional<unsigned> max_i, const std::string& factors,
            const zc::FitOptions& fit) {
  const auto spec = zc::parse_factor_spec(factors);
  unsigned bound = 0;
  for (const auto& f : spec) bound += f.N;
  if (fit.degree_bound) bound = *fit.degree_bound;
  zc::ProblemInstance inst(load_poly(po), require_prime(g));
  auto table = stage("count", [&] { return zc::count_lifting(inst, max_i.value_or(bound + fit.slack), count_options(g)); });
  auto built = stage("fit", [&] { return zc::fit_numerator(table, spec, fit); });
  warn(built.warnings);
  if (g.json)
    emit(zc::to_json(built.series));
  else
    std::cout << zc::render_series(built.series);
  return kOk;
}

int run_classes(const GlobalOptions& g, const SeriesSource& src, const std::string& factors, unsigned n) {
  zc::FactorSpec spec;
  if (!factors.empty()) {
    spec = zc::parse_factor_spec(factors);
    if (n == 0) throw zc::ParseError("-n is required with --factors");
  } else {
    auto built = load_series(src, g);
    warn(built.warnings);
    if (!built.series.factors) throw zc::PreconditionError("series has no denominator_factors");
    spec = *built.series.factors;
    n = built.series.n;
  }
  auto cls = zc::classify_poles(spec);
  if (g.json)
    emit(zc::to_json(cls, n));
  else
    std::cout << zc::render_classes(cls, n);
  return kOk;
}

int run_decompose(const GlobalOptions& g, const SeriesSource& src) {
  auto built = load_series(src, g);
  warn(built.warnings);
  auto b = build_closed_form(built.series);
  if (g.json)
    emit(zc::to_json(b.pfd));
  else
    std::cout << zc::render_decomposition(b.pfd);
  return kOk;
}

int run_closed_form(const GlobalOptions& g, const SeriesSource& src, bool n3_hypothesis) {
  auto built = load_series(src, g);
  warn(built.warnings);
  auto b = build_closed_form(built.series);
  warn(zc::lint_bounds(b.cf, n3_hypothesis));
  if (g.json)
    emit(zc::to_json(b.cf));
  else
    std::cout << zc::render_closed_form(b.cf);
  return kOk;
}

int run_predict(const GlobalOptions& g, const SeriesSource& src, const std::string& cf_file,
                const std::vector<long>& indices) {
  zc::ClosedForm cf = !cf_file.empty() ? zc::closed_form_from_json(zc::parse_json(read_input(cf_file)))
                                       : build_closed_form(load_series(src, g).series).cf;
  if (indices.empty()) throw zc::ParseError("at least one index is required (-i)");
  zc::Json out = zc::Json::array();
  for (long i : indices) {
    auto m = zc::evaluate(cf, i);
    if (g.json)
      out.push_back({{"i", i}, {"M", m.get_str()}});
    else
      std::cout << "M_" << i << " = " << m.get_str() << "\n";
  }
  if (g.json) emit(out);
  return kOk;
}

int run_convert(const GlobalOptions& g, const std::string& file, const std::string& to) {
  const zc::Json in = zc::parse_json(read_input(file));
  const std::string kind = in.is_object() && in.contains("function") && in.at("function").is_string()
                               ? in.at("function").get<std::string>()
                               : "P";
  const std::string target = to.empty() ? (kind == "Z" ? "p" : "z") : to;
  if (target == "z") {
    auto built = zc::series_from_json(in);
    warn(built.warnings);
    const auto& ps = built.series;
    auto z = zc::z_from_p(ps);
    zc::Json out = ps.factors ? zc::zeta_to_json(ps.p, ps.n, zc::z_numerator_over_factors(ps), ps.denominator, ps.factors)
                              : zc::zeta_to_json(ps.p, ps.n, z.numerator(), z.denominator(), std::nullopt);
    if (g.json)
      emit(out);
    else
      std::cout << "Z(t) = " << zc::to_string(z) << "\n";
    return kOk;
  }
  auto zin = zc::zeta_from_json(in);
  auto ps = zc::p_from_z(zin.z, zin.p, zin.n, zin.factors);
  if (g.json)
    emit(zc::to_json(ps));
  else
    std::cout << zc::render_series(ps);
  return kOk;
}

int run_verify(const GlobalOptions& g, const SeriesSource& src, const PolyOptions& po, std::optional<unsigned> max_i) {
  auto built = load_series(src, g);
  warn(built.warnings);
  const auto& ps = built.series;
  const zc::Fixture* fx = fixture_or_null(src.fixture);
  zc::ProblemInstance inst(load_poly(po, fx), ps.p);
  if (inst.n() != ps.n) throw zc::PreconditionError("polynomial and series disagree on the number of variables");
  const unsigned depth = max_i.value_or(fx ? fx->count_depth : 8);
  auto table = stage("count", [&] { return zc::count_lifting(inst, depth, count_options(g)); });
  auto report = zc::validate_poincare(ps, table);
  std::size_t failures = report.failures();
  zc::Json out = {{"series", zc::to_json(report)}};
  std::string cf_text;
  if (ps.factors) {
    auto b = build_closed_form(ps);
    auto check = check_closed_form(b.cf, table);
    failures += check.failures;
    out["closed_form"] = check.rows;
    cf_text = check.text;
  }
  out["passed"] = failures == 0;
  if (g.json) {
    emit(out);
  } else {
    std::cout << "series vs counts:\n" << zc::render_validation(report);
    if (!cf_text.empty()) std::cout << "closed form vs counts:\n" << cf_text;
    std::cout << (failures == 0 ? "PASS\n" : "FAIL\n");
  }
  return failures == 0 ? kOk : kVerification;
}

int run_pipeline(const GlobalOptions& g, const PolyOptions& po, const std::string& fixture_name,
                 const std::string& factors, std::optional<unsigned> max_i, const zc::FitOptions& fit,
                 bool n3_hypothesis) {
  const zc::Fixture* fx = fixture_or_null(fixture_name);
  const zc::Integer p = require_prime(g);
  zc::ProblemInstance inst = stage("input", [&] { return zc::ProblemInstance(load_poly(po, fx), p); });

  zc::FactorSpec spec;
  std::optional<zc::PoincareSeries> reference;
  if (!factors.empty()) {
    spec = zc::parse_factor_spec(factors);
  } else if (fx) {
    reference = fx->poincare(p);
    spec = *reference->factors;
  } else {
    throw zc::ParseError("pipeline needs --factors or --fixture");
  }

  unsigned bound = 0;
  for (const auto& f : spec) bound += f.N;
  if (fit.degree_bound) bound = *fit.degree_bound;
  const unsigned fit_depth = bound + fit.slack;
  const unsigned depth = max_i.value_or(reference ? fx->count_depth : fit_depth);

  std::vector<std::string> warnings;
  auto table = stage("count", [&] { return zc::count_lifting(inst, depth, count_options(g)); });

  // Fit whenever the table is long enough; a fixture supplies the series otherwise.
  std::optional<zc::PoincareSeries> fitted;
  if (depth >= fit_depth || !reference) {
    auto built = stage("fit", [&] { return zc::fit_numerator(table, spec, fit); });
    warnings.insert(warnings.end(), built.warnings.begin(), built.warnings.end());
    fitted = built.series;
  }
  const zc::PoincareSeries& ps = fitted ? *fitted : *reference;
  std::optional<bool> matches_reference;
  if (fitted && reference) matches_reference = fitted->ratfunc() == reference->ratfunc();

  auto b = build_closed_form(ps);
  auto lints = zc::lint_bounds(b.cf, n3_hypothesis);
  warnings.insert(warnings.end(), lints.begin(), lints.end());
  std::optional<zc::DominantTerm> dom;
  if (!b.cf.classes.empty()) dom = zc::dominant_term(b.cf);

  auto report = zc::validate_poincare(ps, table);
  auto check = check_closed_form(b.cf, table);
  std::size_t failures = report.failures() + check.failures;
  if (matches_reference && !*matches_reference) ++failures;

  if (g.json) {
    zc::Json out = {{"polynomial", inst.f().to_string()},
                    {"counts", zc::to_json(table)},
                    {"series_source", fitted ? "fit" : "fixture"},
                    {"series", zc::to_json(ps)}};
    if (matches_reference) out["matches_fixture"] = *matches_reference;
    out["classes"] = zc::to_json(b.classes, ps.n);
    out["decomposition"] = zc::to_json(b.pfd);
    out["closed_form"] = zc::to_json(b.cf);
    out["dominant_term"] = dom ? zc::to_json(*dom) : zc::Json();
    out["warnings"] = warnings;
    out["verification"] = {{"series", zc::to_json(report)}, {"closed_form", check.rows}, {"passed", failures == 0}};
    emit(out);
  } else {
    warn(warnings);
    std::cout << "== f = " << inst.f().to_string() << ", p = " << p.get_str() << "\n\n";
    std::cout << "== counts (lifting)\n" << zc::render_counts(table) << "\n";
    std::cout << "== Poincare series (" << (fitted ? "fitted" : "fixture") << ")\n" << zc::render_series(ps);
    if (matches_reference) std::cout << "fixture agreement: " << (*matches_reference ? "exact" : "DIFFERS") << "\n";
    std::cout << "\n== pole classes\n" << zc::render_classes(b.classes, ps.n);
    std::cout << "\n== partial fractions\n" << zc::render_decomposition(b.pfd);
    std::cout << "\n== closed form\n" << zc::render_closed_form(b.cf);
    std::cout << "\n== dominant term\n" << (dom ? dom->statement : "none (no poles)\n");
    std::cout << "\n== verification\nseries vs counts:\n" << zc::render_validation(report);
    std::cout << "closed form vs counts:\n" << check.text;
    std::cout << (failures == 0 ? "PASS\n" : "FAIL\n");
  }
  return failures == 0 ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetacount: exact counts of polynomial congruences mod p^i and their closed forms"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("--json", g.json, "machine-readable JSON output");
  app.add_option("-p,--p", g.prime, "prime");
  app.add_option("--budget-nodes", g.budget_nodes, "node ceiling for the lifting tree");
  app.add_option("--budget-evals", g.budget_evals, "evaluation ceiling for enumeration");
  app.add_option("--threads", g.threads, "worker threads for counting (0 = all cores)");

  PolyOptions po;
  SeriesSource src;
  unsigned max_i_required = 0;
  std::optional<unsigned> max_i;
  bool naive = false, compare = false, n3 = false;
  std::string mode = "taylor", factors, cf_file, convert_file = "-", convert_to, fixture;
  unsigned vars_n = 0;
  std::vector<long> indices;
  zc::FitOptions fit;
  std::optional<unsigned> degree_bound;

  auto* count = app.add_subcommand("count", "count solutions M_0..M_max");
  add_poly(count, po);
  count->add_option("--max-i", max_i_required, "largest exponent i")->required();
  count->add_flag("--naive", naive, "exhaustive enumeration instead of lifting");
  count->add_flag("--compare", compare, "run both counters and compare");
  count->add_option("--short-circuit", mode, "taylor | graded | nonsingular | none")
      ->check(CLI::IsMember({"taylor", "graded", "nonsingular", "none"}));

  auto* fitcmd = app.add_subcommand("fit", "fit the numerator B(t) over the given denominator factors");
  add_poly(fitcmd, po);
  fitcmd->add_option("--factors", factors, "denominator factors \"nu,N;nu,N;...\"")->required();
  fitcmd->add_option("--max-i", max_i, "count depth (default: degree bound + slack)");
  fitcmd->add_option("--degree-bound", degree_bound, "numerator degree bound (default: sum of N)");
  fitcmd->add_option("--slack", fit.slack, "verification coefficients beyond the bound");

  auto* classes = app.add_subcommand("classes", "partition denominator factors into pole classes");
  add_series_source(classes, src);
  classes->add_option("--factors", factors, "denominator factors \"nu,N;...\"");
  classes->add_option("-n", vars_n, "number of variables (with --factors)");

  auto* decompose = app.add_subcommand("decompose", "partial fraction decomposition by pole class");
  add_series_source(decompose, src);

  auto* closed = app.add_subcommand("closed-form", "residue-class closed forms for M_i");
  add_series_source(closed, src);
  closed->add_flag("--n3-no-multiplicity-two", n3, "lint with the n = 3 hypothesis (no singular point of multiplicity 2)");

  auto* predict = app.add_subcommand("predict", "evaluate M_i from the closed form");
  add_series_source(predict, src);
  predict->add_option("--closed-form", cf_file, "closed-form JSON file");
  predict->add_option("-i", indices, "indices (repeat or comma separate)")->delimiter(',')->required();

  auto* convert = app.add_subcommand("convert", "convert between P(t) and Z_f(t)");
  convert->add_option("--series", convert_file, "input JSON file ('-' for stdin)");
  convert->add_option("--to", convert_to, "z | p (default: the other one)")->check(CLI::IsMember({"z", "p"}));

  auto* pipeline = app.add_subcommand("pipeline", "count, fit, decompose, closed form, verify");
  add_poly(pipeline, po);
  pipeline->add_option("--fixture", fixture, "bundled fixture name");
  pipeline->add_option("--factors", factors, "denominator factors \"nu,N;...\"");
  pipeline->add_option("--max-i", max_i, "count depth");
  pipeline->add_option("--degree-bound", degree_bound, "numerator degree bound");
  pipeline->add_option("--slack", fit.slack, "verification coefficients beyond the bound");
  pipeline->add_flag("--n3-no-multiplicity-two", n3, "lint with the n = 3 hypothesis");

  auto* verify = app.add_subcommand("verify", "check a series and its closed form against counted M_i");
  add_series_source(verify, src);
  add_poly(verify, po);
  verify->add_option("--max-i", max_i, "count depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  fit.degree_bound = degree_bound;

  try {
    if (*count) return run_count(g, po, max_i_required, naive, compare, mode);
    if (*fitcmd) return run_fit(g, po, max_i, factors, fit);
    if (*classes) return run_classes(g, src, factors, vars_n);
    if (*decompose) return run_decompose(g, src);
    if (*closed) return run_closed_form(g, src, n3);
    if (*predict) return run_predict(g, src, cf_file, indices);
    if (*convert) return run_convert(g, convert_file, convert_to);
    if (*pipeline) return run_pipeline(g, po, fixture, factors, max_i, fit, n3);
    if (*verify) return run_verify(g, src, po, max_i);
  } catch (const zc::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const zc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const zc::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

#include "zetacount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "zetacount/errors.hpp"

namespace zetacount {

ProblemInstance::ProblemInstance(LatticePolynomial f, Integer p) : f_(std::move(f)), p_(std::move(p)) {
  if (!is_prime(p_)) throw PreconditionError(p_.get_str() + " is not prime");
}

std::optional<std::string> check_table_invariants(const CountTable& table) {
  if (table.counts.empty()) return "empty count table";
  if (table.counts[0] != 1) return "M_0 = " + table.counts[0].get_str() + ", expected 1";
  const Integer fiber = ipow(table.p, table.n);
  for (std::size_t i = 0; i + 1 < table.counts.size(); ++i) {
    if (table.counts[i + 1] < 0 || table.counts[i + 1] > fiber * table.counts[i])
      return "M_" + std::to_string(i + 1) + " = " + table.counts[i + 1].get_str() + " violates 0 <= M_{i+1} <= p^n M_i";
  }
  return std::nullopt;
}

namespace {

// Arithmetic modulo q = p^K on machine words. Requires q < 2^63.
struct WordRing {
  using Value = std::uint64_t;

  WordRing(const Integer& prime, unsigned exponent) : p(prime.get_ui()), K(exponent) {
    q = 1;
    pows.push_back(1);
    for (unsigned k = 0; k < K; ++k) {
      q *= p;
      pows.push_back(q);
    }
  }

  static bool fits(const Integer& prime, unsigned exponent) {
    return ipow(prime, exponent) < (Integer(1) << 62);
  }

  Value from(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), q);
    return r.get_ui();
  }
  Value from_small(std::uint64_t v) const { return v % q; }
  Value add(Value a, Value b) const {
    Value s = a + b;
    return s >= q ? s - q : s;
  }
  Value mul(Value a, Value b) const {
    return static_cast<Value>(static_cast<unsigned __int128>(a) * b % q);
  }
  Value pow_p(unsigned k) const { return pows[k]; }
  /// min(v_p(a), cap), with v_p(0) taken as infinite.
  unsigned val(Value a, unsigned cap) const {
    unsigned v = 0;
    while (v < cap && a % p == 0) {
      if (a == 0) return cap;
      a /= p;
      ++v;
    }
    return v;
  }
  /// floor((a mod p^(k+1)) / p^k) mod p, i.e. the k-th base-p digit.
  std::uint64_t digit(Value a, unsigned k) const { return (a / pows[k]) % p; }
  std::uint64_t mod_p(Value a) const { return a % p; }
  std::uint64_t prime_word() const { return p; }

  std::uint64_t p;
  unsigned K;
  std::uint64_t q;
  std::vector<std::uint64_t> pows;
};

// Same interface on GMP integers, for moduli beyond a machine word.
struct BigRing {
  using Value = Integer;

  BigRing(const Integer& prime, unsigned exponent) : p(prime), K(exponent) {
    Integer acc = 1;
    pows.push_back(acc);
    for (unsigned k = 0; k < K; ++k) {
      acc *= p;
      pows.push_back(acc);
    }
    q = acc;
  }

  Value from(const Integer& z) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t());
    return r;
  }
  Value from_small(std::uint64_t v) const { return from(Integer(static_cast<unsigned long>(v))); }
  Value add(const Value& a, const Value& b) const {
    Value s = a + b;
    if (s >= q) s -= q;
    return s;
  }
  Value mul(const Value& a, const Value& b) const {
    Value r = a * b;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    return r;
  }
  Value pow_p(unsigned k) const { return pows[k]; }
  unsigned val(const Value& a, unsigned cap) const {
    if (a == 0) return cap;
    Integer t = a;
    unsigned v = 0;
    while (v < cap && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
      ++v;
    }
    return v;
  }
  std::uint64_t digit(const Value& a, unsigned k) const {
    Integer d = a / pows[k];
    mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    return d.get_ui();
  }
  std::uint64_t mod_p(const Value& a) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r.get_ui();
  }
  std::uint64_t prime_word() const { return p.get_ui(); }

  Integer p;
  unsigned K;
  Integer q;
  std::vector<Integer> pows;
};

// f together with its gradient, coefficients reduced into a ring.
template <class Ring>
class CompiledSystem {
 public:
  using Value = typename Ring::Value;

  CompiledSystem(const Ring& ring, const LatticePolynomial& f) : ring_(ring), n_(f.variable_count()) {
    polys_.push_back(compile(f.terms()));
    for (unsigned j = 0; j < n_; ++j) polys_.push_back(compile(f.partial(j)));
    for (const auto& [e, c] : f.terms())
      for (unsigned k : e) max_exp_ = std::max(max_exp_, k);
    build_taylor(f);
  }

  unsigned n() const { return n_; }

  /// out[0] = f(x); out[1 + j] = df/dx_j (x); all mod q.
  /// With `with_gradient` false only out[0] is filled.
  void evaluate(std::span<const Value> x, std::vector<Value>& out, std::vector<Value>& scratch,
                bool with_gradient = true) const {
    const std::size_t stride = max_exp_ + 1;
    scratch.resize(n_ * stride);
    for (unsigned j = 0; j < n_; ++j) {
      scratch[j * stride] = ring_.from_small(1);
      for (unsigned k = 1; k <= max_exp_; ++k) scratch[j * stride + k] = ring_.mul(scratch[j * stride + k - 1], x[j]);
    }
    const std::size_t count = with_gradient ? polys_.size() : 1;
    out.resize(polys_.size());
    for (std::size_t idx = 0; idx < count; ++idx) {
      Value acc = ring_.from_small(0);
      for (const auto& [coeff, exps] : polys_[idx]) {
        Value term = coeff;
        for (unsigned j = 0; j < n_; ++j)
          if (exps[j] != 0) term = ring_.mul(term, scratch[j * stride + exps[j]]);
        acc = ring_.add(acc, term);
      }
      out[idx] = acc;
    }
  }

  /// min over |alpha| >= 2 of v_p(T_alpha(x)) + level |alpha|, capped, where
  /// f(x + y) = sum_alpha T_alpha(x) y^alpha. Uses the powers left in
  /// `scratch` by the last evaluate() call at the same x.
  unsigned higher_order_weight(const std::vector<Value>& scratch, unsigned level, unsigned cap) const {
    const std::size_t stride = max_exp_ + 1;
    unsigned best = cap;
    for (const auto& t : taylor_) {
      if (static_cast<unsigned long>(level) * t.order >= best) continue;
      Value acc = ring_.from_small(0);
      for (const auto& [coeff, exps] : t.terms) {
        Value term = coeff;
        for (unsigned j = 0; j < n_; ++j)
          if (exps[j] != 0) term = ring_.mul(term, scratch[j * stride + exps[j]]);
        acc = ring_.add(acc, term);
      }
      const unsigned w = level * t.order + ring_.val(acc, best - level * t.order);
      best = std::min(best, w);
    }
    return best;
  }

 private:
  struct TaylorCoefficient {
    unsigned order;
    std::vector<std::pair<Value, Exponents>> terms;
  };

  void build_taylor(const LatticePolynomial& f) {
    // T_alpha = sum_terms c prod_j binom(e_j, alpha_j) x_j^(e_j - alpha_j)
    std::map<Exponents, std::map<Exponents, Integer>> by_alpha;
    for (const auto& [e, c] : f.terms()) {
      Exponents alpha(n_, 0);
      while (true) {
        unsigned order = 0;
        for (unsigned k : alpha) order += k;
        if (order >= 2) {
          Integer coeff = c;
          Exponents rest(n_);
          for (unsigned j = 0; j < n_; ++j) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), e[j], alpha[j]);
            coeff *= b;
            rest[j] = e[j] - alpha[j];
          }
          by_alpha[alpha][rest] += coeff;
        }
        unsigned j = 0;
        while (j < n_ && ++alpha[j] > e[j]) alpha[j++] = 0;
        if (j == n_) break;
      }
    }
    for (const auto& [alpha, terms] : by_alpha) {
      unsigned order = 0;
      for (unsigned k : alpha) order += k;
      auto compiled = compile(terms);
      if (!compiled.empty()) taylor_.push_back({order, std::move(compiled)});
    }
    std::stable_sort(taylor_.begin(), taylor_.end(),
                     [](const TaylorCoefficient& a, const TaylorCoefficient& b) { return a.order < b.order; });
  }

  std::vector<std::pair<Value, Exponents>> compile(const std::map<Exponents, Integer>& terms) const {
    std::vector<std::pair<Value, Exponents>> out;
    for (const auto& [e, c] : terms) {
      Value v = ring_.from(c);
      if (v != ring_.from_small(0)) out.emplace_back(v, e);
    }
    return out;
  }

  const Ring& ring_;
  unsigned n_;
  unsigned max_exp_ = 0;
  std::vector<std::vector<std::pair<Value, Exponents>>> polys_;
  std::vector<TaylorCoefficient> taylor_;
};

// Counts are accumulated as a histogram of p-power contributions per level,
// so merging per-thread results is plain addition.
class Histogram {
 public:
  Histogram(unsigned levels, unsigned max_exponent)
      : width_(max_exponent + 1), cells_(static_cast<std::size_t>(levels + 1) * width_, 0) {}

  void add(unsigned level, unsigned exponent) { cells_[level * width_ + exponent] += 1; }
  void merge(const Histogram& other) {
    for (std::size_t k = 0; k < cells_.size(); ++k) cells_[k] += other.cells_[k];
  }
  Integer total(unsigned level, const Integer& p) const {
    Integer acc = 0;
    for (std::size_t e = 0; e < width_; ++e) {
      std::uint64_t c = cells_[level * width_ + e];
      if (c != 0) acc += Integer(static_cast<unsigned long>(c)) * ipow(p, e);
    }
    return acc;
  }

 private:
  std::size_t width_;
  std::vector<std::uint64_t> cells_;
};

template <class Ring>
class LiftingEngine {
 public:
  using Value = typename Ring::Value;

  LiftingEngine(const Ring& ring, const CompiledSystem<Ring>& system, unsigned max_i, const CountOptions& options,
                std::atomic<std::uint64_t>& node_counter)
      : ring_(ring),
        sys_(system),
        n_(system.n()),
        max_i_(max_i),
        opts_(options),
        nodes_(node_counter),
        hist_(max_i, system.n() * max_i) {}

  void run_root(const std::vector<Value>& root) {
    std::vector<Value> x = root;
    visit(x, 1);
  }

  const Histogram& histogram() const { return hist_; }
  const LiftingStats& stats() const { return stats_; }

 private:
  void visit(std::vector<Value>& x, unsigned level) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > opts_.node_budget)
      throw BudgetExceeded("lifting tree exceeded the node budget of " + std::to_string(opts_.node_budget));
    ++stats_.nodes;
    hist_.add(level, 0);
    if (level == max_i_) return;

    std::vector<Value> vals;
    std::vector<Value> scratch;
    sys_.evaluate(x, vals, scratch);

    unsigned grad_val = max_i_;
    for (unsigned j = 0; j < n_; ++j) grad_val = std::min(grad_val, ring_.val(vals[1 + j], max_i_));
    const unsigned delta = std::min(grad_val, level);

    if (closes(delta, level)) {
      close_subtree(vals[0], delta, level);
      return;
    }
    if (opts_.short_circuit == ShortCircuit::taylor && close_uniform(vals[0], grad_val, scratch, level)) return;

    // Children x + p^level u solve f mod p^(level+1) iff
    // f(x)/p^level + grad f(x) . u = 0 mod p.
    ++stats_.expanded;
    const std::uint64_t prime = ring_.prime_word();
    const std::uint64_t constant = ring_.digit(vals[0], level);
    std::vector<std::uint64_t> grad(n_);
    for (unsigned j = 0; j < n_; ++j) grad[j] = ring_.mod_p(vals[1 + j]);

    const Value step = ring_.pow_p(level);
    std::vector<std::uint64_t> u(n_, 0);
    std::vector<Value> child(x);
    while (true) {
      std::uint64_t lhs = constant;
      for (unsigned j = 0; j < n_; ++j) lhs = (lhs + grad[j] * u[j]) % prime;
      if (lhs == 0) {
        for (unsigned j = 0; j < n_; ++j) child[j] = ring_.add(x[j], ring_.mul(step, ring_.from_small(u[j])));
        visit(child, level + 1);
      }
      unsigned j = 0;
      while (j < n_ && ++u[j] == prime) u[j++] = 0;
      if (j == n_) break;
    }
  }

  bool closes(unsigned delta, unsigned level) const {
    switch (opts_.short_circuit) {
      case ShortCircuit::none: return false;
      case ShortCircuit::nonsingular: return delta == 0;
      case ShortCircuit::graded:
      case ShortCircuit::taylor: return delta < level;
    }
    return false;
  }

  // The class of x mod p^level: f is constant mod p^(level+delta) on it, and
  // beyond level+delta each solution has exactly p^(n-1) lifts.
  void close_subtree(const Value& fx, unsigned delta, unsigned level) {
    ++stats_.closed;
    const unsigned v = std::min(ring_.val(fx, max_i_), level + delta);
    for (unsigned r = 1; r <= delta && level + r <= max_i_; ++r)
      if (v >= level + r) hist_.add(level + r, n_ * r);
    if (v < level + delta) return;
    for (unsigned s = 1; level + delta + s <= max_i_; ++s) hist_.add(level + delta + s, n_ * delta + (n_ - 1) * s);
  }

  // Writing f(x + p^level u) = f(x) + (terms of valuation >= w): when
  // v_p(f(x)) < w the valuation is constant on the class, and when w reaches
  // max_i every lift solves the congruence up to max_i. Either way the
  // subtree consists of all lifts up to level min(v_p(f(x)), max_i).
  bool close_uniform(const Value& fx, unsigned grad_val, const std::vector<Value>& scratch, unsigned level) {
    const unsigned vf = ring_.val(fx, max_i_);
    const unsigned first_order = std::min(max_i_, level + grad_val);
    if (vf >= first_order && first_order < max_i_) return false;
    const unsigned w = std::min(first_order, sys_.higher_order_weight(scratch, level, first_order));
    if (!(vf < w || w >= max_i_)) return false;
    ++stats_.closed;
    for (unsigned j = level + 1; j <= std::min(vf, max_i_); ++j) hist_.add(j, n_ * (j - level));
    return true;
  }

  const Ring& ring_;
  const CompiledSystem<Ring>& sys_;
  unsigned n_;
  unsigned max_i_;
  const CountOptions& opts_;
  std::atomic<std::uint64_t>& nodes_;
  Histogram hist_;
  LiftingStats stats_;
};

std::uint64_t checked_power(const Integer& p, unsigned long e, std::uint64_t budget, const char* what) {
  Integer total = ipow(p, e);
  if (total > Integer(static_cast<unsigned long>(budget)))
    throw BudgetExceeded(std::string(what) + " needs " + total.get_str() + " evaluations, budget is " +
                         std::to_string(budget));
  return total.get_ui();
}

// Enumerates [0, p^k)^n as little-endian digit vectors.
template <class Fn>
void for_each_point(std::uint64_t side, unsigned n, Fn&& fn) {
  std::vector<std::uint64_t> x(n, 0);
  while (true) {
    fn(x);
    unsigned j = 0;
    while (j < n && ++x[j] == side) x[j++] = 0;
    if (j == n) break;
  }
}

template <class Ring>
CountTable run_lifting(const Ring& ring, const ProblemInstance& instance, unsigned max_i, const CountOptions& options,
                       LiftingStats* stats) {
  const unsigned n = instance.n();
  CompiledSystem<Ring> sys(ring, instance.f());

  const std::uint64_t prime = instance.p().get_ui();
  checked_power(instance.p(), n, options.eval_budget, "root enumeration mod p");
  std::vector<std::vector<typename Ring::Value>> roots;
  {
    std::vector<typename Ring::Value> vals, scratch, point(n);
    for_each_point(prime, n, [&](const std::vector<std::uint64_t>& x) {
      for (unsigned j = 0; j < n; ++j) point[j] = ring.from_small(x[j]);
      sys.evaluate(point, vals, scratch, false);
      if (ring.mod_p(vals[0]) == 0) roots.push_back(point);
    });
  }

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, roots.size())));

  std::atomic<std::uint64_t> node_counter{0};
  std::vector<LiftingEngine<Ring>> engines;
  engines.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(ring, sys, max_i, options, node_counter);

  auto work = [&](unsigned t) {
    for (std::size_t r = t; r < roots.size(); r += threads) engines[t].run_root(roots[r]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Histogram total(max_i, n * max_i);
  LiftingStats agg;
  for (const auto& e : engines) {
    total.merge(e.histogram());
    agg.nodes += e.stats().nodes;
    agg.expanded += e.stats().expanded;
    agg.closed += e.stats().closed;
  }
  if (stats) *stats = agg;

  CountTable table{instance.p(), n, {}};
  table.counts.push_back(1);
  for (unsigned level = 1; level <= max_i; ++level) table.counts.push_back(total.total(level, instance.p()));
  return table;
}

}  // namespace

CountTable count_lifting(const ProblemInstance& instance, unsigned max_i, const CountOptions& options,
                         LiftingStats* stats) {
  if (max_i == 0) {
    if (stats) *stats = {};
    return CountTable{instance.p(), instance.n(), {Integer(1)}};
  }
  if (!instance.p().fits_ulong_p()) throw BudgetExceeded("prime too large to enumerate residues mod p");
  if (WordRing::fits(instance.p(), max_i)) return run_lifting(WordRing(instance.p(), max_i), instance, max_i, options, stats);
  return run_lifting(BigRing(instance.p(), max_i), instance, max_i, options, stats);
}

Integer count_naive(const ProblemInstance& instance, unsigned i, std::uint64_t eval_budget) {
  if (i == 0) return 1;
  const unsigned n = instance.n();
  checked_power(instance.p(), static_cast<unsigned long>(i) * n, eval_budget, "naive count");
  // Within budget implies p^i < 2^27 or so, which fits a word ring.
  WordRing ring(instance.p(), i);
  CompiledSystem<WordRing> sys(ring, instance.f());
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> vals, scratch;
  for_each_point(ring.q, n, [&](const std::vector<std::uint64_t>& x) {
    sys.evaluate(x, vals, scratch, false);
    if (vals[0] == 0) ++hits;
  });
  return Integer(static_cast<unsigned long>(hits));
}

CountTable count_naive_table(const ProblemInstance& instance, unsigned max_i, std::uint64_t eval_budget) {
  CountTable table{instance.p(), instance.n(), {}};
  for (unsigned i = 0; i <= max_i; ++i) table.counts.push_back(count_naive(instance, i, eval_budget));
  return table;
}

std::optional<std::vector<Integer>> find_singular_point(const ProblemInstance& instance, unsigned k,
                                                        std::uint64_t eval_budget) {
  if (k == 0) throw PreconditionError("singular-point check needs k >= 1");
  const unsigned n = instance.n();
  checked_power(instance.p(), static_cast<unsigned long>(k) * n, eval_budget, "singular-point check");
  WordRing ring(instance.p(), k);
  CompiledSystem<WordRing> sys(ring, instance.f());
  std::optional<std::vector<Integer>> witness;
  std::vector<std::uint64_t> vals, scratch;
  for_each_point(ring.q, n, [&](const std::vector<std::uint64_t>& x) {
    if (witness) return;
    sys.evaluate(x, vals, scratch);
    if (std::all_of(vals.begin(), vals.end(), [](std::uint64_t v) { return v == 0; })) {
      std::vector<Integer> w;
      for (auto c : x) w.emplace_back(static_cast<unsigned long>(c));
      witness = std::move(w);
    }
  });
  return witness;
}

Integer SmoothCaseFormula::predict(unsigned i) const {
  if (i < base_index) throw PreconditionError("smooth-case formula holds only for i >= " + std::to_string(base_index));
  return value * ipow(p, static_cast<unsigned long>(growth_exponent) * (i - base_index));
}

std::vector<unsigned> SmoothCaseFormula::mismatches(const CountTable& table) const {
  std::vector<unsigned> out;
  for (std::size_t i = base_index; i < table.counts.size(); ++i)
    if (predict(static_cast<unsigned>(i)) != table.counts[i]) out.push_back(static_cast<unsigned>(i));
  return out;
}

SmoothCaseFormula smooth_case_predict(const ProblemInstance& instance, unsigned k, const CountTable& table,
                                      std::uint64_t eval_budget) {
  if (k == 0) throw PreconditionError("k must be positive");
  if (auto w = find_singular_point(instance, k, eval_budget)) {
    std::ostringstream os;
    os << "f has a singular point modulo p^" << k << " at x = (";
    for (std::size_t j = 0; j < w->size(); ++j) os << (j ? ", " : "") << (*w)[j].get_str();
    os << ")";
    throw PreconditionError(os.str());
  }
  const unsigned base = 2 * k - 1;
  if (table.counts.size() <= base)
    throw PreconditionError("count table must contain M_" + std::to_string(base));
  return SmoothCaseFormula{instance.p(), k, base, table.counts[base], instance.n() - 1};
}

}  // namespace zetacount

#pragma once

// Exact solution counts M_i = #{x in (Z/p^i)^n : f(x) = 0 mod p^i}.

#include <cstdint>
#include <optional>
#include <vector>

#include "zetacount/exact.hpp"
#include "zetacount/lattice_poly.hpp"

namespace zetacount {

/// A polynomial congruence at a fixed prime. The constructor checks primality.
class ProblemInstance {
 public:
  ProblemInstance(LatticePolynomial f, Integer p);

  const LatticePolynomial& f() const { return f_; }
  const Integer& p() const { return p_; }
  unsigned n() const { return f_.variable_count(); }

 private:
  LatticePolynomial f_;
  Integer p_;
};

/// M_0 ... M_D for a fixed prime and variable count.
struct CountTable {
  Integer p;
  unsigned n = 0;
  std::vector<Integer> counts;

  std::size_t max_index() const { return counts.empty() ? 0 : counts.size() - 1; }
};

/// Returns a description of the first violated table invariant
/// (M_0 = 1, M_{i+1} <= p^n M_i), or nullopt.
std::optional<std::string> check_table_invariants(const CountTable& table);

enum class ShortCircuit {
  none,         // expand every node
  nonsingular,  // close subtrees of nodes with grad f != 0 mod p
  graded,       // close subtrees of nodes with v_p(grad f) < current level
  taylor,       // graded, plus classes on which v_p(f) is constant or >= max_i
};

struct CountOptions {
  std::uint64_t node_budget = 10'000'000;
  std::uint64_t eval_budget = 100'000'000;
  ShortCircuit short_circuit = ShortCircuit::taylor;
  unsigned threads = 1;  // 0 picks the hardware concurrency
};

struct LiftingStats {
  std::uint64_t nodes = 0;
  std::uint64_t expanded = 0;
  std::uint64_t closed = 0;
};

/// Exhaustive enumeration of (Z/p^i)^n. Throws BudgetExceeded when
/// p^(n*i) exceeds `eval_budget`.
Integer count_naive(const ProblemInstance& instance, unsigned i, std::uint64_t eval_budget = 100'000'000);
CountTable count_naive_table(const ProblemInstance& instance, unsigned max_i,
                             std::uint64_t eval_budget = 100'000'000);

/// Depth-first traversal of the lifting tree rooted at the solutions mod p.
/// A node x mod p^i with delta = v_p(grad f(x)) < i has a closed-form subtree:
/// its class is uniform up to level i + delta, and from there every solution
/// lifts to exactly p^(n-1) solutions one level up. delta = 0 is the usual
/// nonsingular Hensel step.
CountTable count_lifting(const ProblemInstance& instance, unsigned max_i, const CountOptions& options = {},
                         LiftingStats* stats = nullptr);

/// A point x mod p^k with f(x) = 0 and grad f(x) = 0 mod p^k, if one exists.
std::optional<std::vector<Integer>> find_singular_point(const ProblemInstance& instance, unsigned k,
                                                        std::uint64_t eval_budget = 100'000'000);

/// M_i = value * p^(growth_exponent * (i - base_index)) for i >= base_index.
struct SmoothCaseFormula {
  Integer p;
  unsigned k = 0;
  unsigned base_index = 0;
  Integer value;
  unsigned growth_exponent = 0;

  Integer predict(unsigned i) const;
  /// Indices i >= base_index in `table` where the prediction differs.
  std::vector<unsigned> mismatches(const CountTable& table) const;
};

/// Throws PreconditionError (with the witness) when f has a singular point
/// mod p^k, or when `table` does not reach index 2k-1.
SmoothCaseFormula smooth_case_predict(const ProblemInstance& instance, unsigned k, const CountTable& table,
                                      std::uint64_t eval_budget = 100'000'000);

}  // namespace zetacount

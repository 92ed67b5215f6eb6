#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hmo/errors.hpp"
#include "hmo/lp.hpp"

namespace hmo {

// min base.objective·x + Σ_j convex_cost[j][x_j − lower_j] over the integer
// points of base (for the flagged coordinates).
struct IntegerProgram {
  LinearProgram base;
  std::vector<bool> integer;
  // Either empty or one entry per variable; a table lists the cost of every
  // integer value of the variable over [lower, upper].
  std::vector<std::optional<RationalVector>> convex_cost;

  std::size_t num_vars() const { return base.num_vars(); }
  // Appends a column; integer columns must be given finite bounds.
  std::size_t add_variable(Rational cost, Bound lo, Bound hi, bool is_integer);
  void set_convex_cost(std::size_t var, RationalVector table);

  // Throws InputError for unbounded integer variables, tables on continuous
  // variables, wrong table lengths or non-convex tables.
  void validate() const;
  // Objective of a point given in the original variables.
  Rational evaluate(const RationalVector& x) const;
};

class NonConvexError : public InputError {
 public:
  NonConvexError(std::size_t index, const std::string& what) : InputError(what), index_(index) {}
  // First k with values[k+1]−values[k] < values[k]−values[k−1].
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Delta expansion of a convex table over [l, l+len−1]: x = l + Σ δ_k with
// δ_k ∈ [0,1] costing marginals[k] = values[k+1] − values[k].
struct ConvexSegments {
  Rational base_value;
  RationalVector marginals;
};

ConvexSegments linearize_separable_convex(const RationalVector& values);

enum class IlpStatus { kOptimal, kInfeasible, kUnbounded, kFeasible, kNodeLimit };

const char* to_string(IlpStatus s);

struct IlpOptions {
  // Stop after this many improving incumbents (1 = first feasible point).
  std::optional<std::size_t> incumbent_limit;
  // Stop after exploring this many branching nodes.
  std::optional<std::size_t> node_limit;
};

struct IlpResult {
  IlpStatus status = IlpStatus::kInfeasible;
  RationalVector values;
  Rational objective;
  std::size_t nodes = 0;  // branching nodes below the root
  std::size_t lp_solves = 0;
  std::size_t pivots = 0;
  bool has_solution() const { return status == IlpStatus::kOptimal || status == IlpStatus::kFeasible; }
};

// The linear program handed to branch and bound: convex tables replaced by
// segment columns appended after the original variables.
class IlpModel {
 public:
  explicit IlpModel(const IntegerProgram& ip);

  const LinearProgram& relaxation() const { return lp_; }
  std::size_t num_original_vars() const { return n_; }
  SimplexSession make_session() const { return SimplexSession(lp_); }
  // Constant dropped from the relaxation objective by the table expansion.
  const Rational& objective_offset() const { return offset_; }

  // Depth-first branch and bound from the given (possibly bound-modified)
  // session: first fractional integer variable by index, floor branch first.
  IlpResult branch_and_bound(SimplexSession session, const IlpOptions& options = {}) const;

 private:
  struct Search;

  IntegerProgram ip_;
  LinearProgram lp_;
  std::size_t n_ = 0;
  Rational offset_;
  bool integral_objective_ = false;
  bool empty_box_ = false;  // some integer box holds no integer
};

IlpResult solve_ilp(const IntegerProgram& ip, const IlpOptions& options = {});

// Optimal point that is lexicographically smallest among all optimal points:
// the optimum is fixed by an objective cut over the expanded relaxation, then
// each original variable is minimised and fixed in index order.
IlpResult solve_ilp_lexmin(const IntegerProgram& ip);

}  // namespace hmo

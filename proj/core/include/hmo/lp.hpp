#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hmo/rational.hpp"

namespace hmo {

enum class Relation { kLe, kEq, kGe };

// Bound value in Q ∪ {±∞}; std::nullopt is the infinite side.
using Bound = std::optional<Rational>;

struct LpRow {
  RationalVector coef;
  Relation rel = Relation::kLe;
  Rational rhs;
};

// min objective·x subject to rows and lower ≤ x ≤ upper.
struct LinearProgram {
  RationalVector objective;
  std::vector<LpRow> rows;
  std::vector<Bound> lower;
  std::vector<Bound> upper;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  // Appends a column (zero in every existing row) and returns its index.
  std::size_t add_variable(Rational cost, Bound lo, Bound hi);
  // coef may be shorter than num_vars(); missing entries are zero.
  void add_row(RationalVector coef, Relation rel, Rational rhs);

  // Throws InputError on inconsistent dimensions or lower > upper.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector primal;
  Rational objective;
  // One multiplier per row: objective = Σ dual_i·rhs_i + Σ_j bound terms of
  // the reduced costs objective_j − dual·A_j.
  RationalVector duals;
  // Indices of basic columns; structural columns are 0..n-1, the row
  // activity of row i is column n+i.
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

// Exact primal simplex (Bland's rule) with artificial-variable phase 1.
LpSolution solve_lp(const LinearProgram& lp);

// Dual objective implied by duals; equals solution.objective when Optimal.
Rational dual_objective(const LinearProgram& lp, const LpSolution& sol);

// Checks primal feasibility, dual sign conditions and objective equality.
bool certifies_optimality(const LinearProgram& lp, const LpSolution& sol);

// Textual dump: exact "p/q" coefficients, variables named x{index}, one
// constraint per line. Integer markers are appended when provided.
void write_lp(std::ostream& os, const LinearProgram& lp, const std::vector<bool>* integer = nullptr);
std::string lp_to_string(const LinearProgram& lp, const std::vector<bool>* integer = nullptr);

// Warm-startable simplex state over a fixed constraint matrix. Bounds may be
// tightened or relaxed between solves; re-solves start from the previous basis
// and use the dual simplex when the basis stays dual feasible.
class SimplexSession {
 public:
  explicit SimplexSession(const LinearProgram& lp);

  LpStatus solve();

  std::size_t num_vars() const { return n_; }
  void set_bounds(std::size_t var, Bound lo, Bound hi);
  const Bound& lower(std::size_t var) const { return lo_[var]; }
  const Bound& upper(std::size_t var) const { return hi_[var]; }

  LpStatus status() const { return status_; }
  Rational value(std::size_t var) const;
  RationalVector primal() const;
  Rational objective() const;
  RationalVector duals() const;
  std::vector<std::size_t> basis() const;
  std::size_t pivots() const { return pivots_; }

 private:
  enum class NbState : unsigned char { kLower, kUpper, kFree, kBasic };

  void build(const LinearProgram& lp);
  bool phase1();
  LpStatus primal_simplex();
  LpStatus dual_simplex();
  void pivot(std::size_t row, std::size_t col);
  void recompute_reduced_costs();
  bool in_bounds(std::size_t var, const Rational& v) const;
  bool dual_feasible() const;
  void place_nonbasic(std::size_t var);

  std::shared_ptr<const LinearProgram> original_;
  std::size_t n_ = 0;     // structural columns
  std::size_t m_ = 0;     // rows
  std::size_t cols_ = 0;  // structural + row activities (+ artificials in phase 1)
  std::vector<Rational> tab_;  // m_ x cols_, row-major: B^{-1}[A | -I | art]
  std::vector<Rational> cost_;
  std::vector<Rational> red_;  // reduced costs
  std::vector<Bound> lo_, hi_;
  std::vector<NbState> state_;
  std::vector<Rational> xval_;  // value of every column
  std::vector<std::size_t> basic_;  // basic column per row
  std::vector<std::size_t> row_of_;  // row of basic column, or npos
  LpStatus status_ = LpStatus::kInfeasible;
  bool solved_once_ = false;
  bool phase2_ready_ = false;  // tableau holds a phase-2 basis
  std::size_t pivots_ = 0;

  Rational& at(std::size_t r, std::size_t c) { return tab_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return tab_[r * cols_ + c]; }
};

}  // namespace hmo

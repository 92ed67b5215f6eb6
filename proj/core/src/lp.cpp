#include "hmo/lp.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "hmo/errors.hpp"

namespace hmo {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

std::size_t LinearProgram::add_variable(Rational cost, Bound lo, Bound hi) {
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  for (LpRow& row : rows) row.coef.emplace_back();
  return objective.size() - 1;
}

void LinearProgram::add_row(RationalVector coef, Relation rel, Rational rhs) {
  if (coef.size() > num_vars()) throw InputError("row has more coefficients than variables");
  coef.resize(num_vars());
  rows.push_back(LpRow{std::move(coef), rel, std::move(rhs)});
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) throw InputError("bound vectors do not match the variable count");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coef.size() != n) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].coef.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw InputError("variable x" + std::to_string(j) + " has lower bound above upper bound");
    }
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SimplexSession
//
// Columns 0..n-1 are structural, n..n+m-1 are row activities s_i with the
// equality A_i x - s_i = 0, so every constraint is an equality and every
// restriction is a bound. The tableau stores B^{-1}[A | -I]; basic values
// satisfy x_B = -Σ_{j nonbasic} tab[.][j] x_j.

SimplexSession::SimplexSession(const LinearProgram& lp) {
  lp.validate();
  original_ = std::make_shared<const LinearProgram>(lp);
  build(lp);
}

void SimplexSession::place_nonbasic(std::size_t j) {
  if (lo_[j] && hi_[j] && *lo_[j] == *hi_[j]) {
    state_[j] = NbState::kLower;
    xval_[j] = *lo_[j];
  } else if (lo_[j] && (!hi_[j] || red_.empty() || red_[j].sign() >= 0)) {
    state_[j] = NbState::kLower;
    xval_[j] = *lo_[j];
  } else if (hi_[j]) {
    state_[j] = NbState::kUpper;
    xval_[j] = *hi_[j];
  } else if (lo_[j]) {
    state_[j] = NbState::kLower;
    xval_[j] = *lo_[j];
  } else {
    state_[j] = NbState::kFree;
    xval_[j] = Rational(0);
  }
}

void SimplexSession::build(const LinearProgram& lp) {
  n_ = lp.num_vars();
  m_ = lp.num_rows();
  // Phase-1 layout: structural, row activities, one artificial per row.
  cols_ = n_ + 2 * m_;
  tab_.assign(m_ * cols_, Rational());
  cost_.assign(cols_, Rational());
  red_.clear();
  lo_ = lp.lower;
  hi_ = lp.upper;
  lo_.resize(n_ + m_);
  hi_.resize(n_ + m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const LpRow& row = lp.rows[i];
    lo_[n_ + i] = row.rel == Relation::kLe ? Bound() : Bound(row.rhs);
    hi_[n_ + i] = row.rel == Relation::kGe ? Bound() : Bound(row.rhs);
  }
  lo_.resize(cols_, Bound(Rational(0)));
  hi_.resize(cols_, Bound());
  state_.assign(cols_, NbState::kLower);
  xval_.assign(cols_, Rational());
  basic_.assign(m_, kNone);
  row_of_.assign(cols_, kNone);

  for (std::size_t j = 0; j < n_ + m_; ++j) place_nonbasic(j);
  for (std::size_t i = 0; i < m_; ++i) {
    const LpRow& row = lp.rows[i];
    Rational residual = xval_[n_ + i];
    for (std::size_t j = 0; j < n_; ++j) residual.sub_mul(row.coef[j], xval_[j]);
    const bool neg = residual.sign() < 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!row.coef[j].is_zero()) at(i, j) = neg ? -row.coef[j] : row.coef[j];
    }
    at(i, n_ + i) = neg ? Rational(1) : Rational(-1);
    const std::size_t art = n_ + m_ + i;
    at(i, art) = Rational(1);
    basic_[i] = art;
    row_of_[art] = i;
    state_[art] = NbState::kBasic;
    xval_[art] = residual.abs();
    cost_[art] = Rational(1);
  }
  red_.assign(cols_, Rational());
  recompute_reduced_costs();
}

void SimplexSession::recompute_reduced_costs() {
  red_.assign(cols_, Rational());
  for (std::size_t j = 0; j < cols_; ++j) red_[j] = cost_[j];
  for (std::size_t i = 0; i < m_; ++i) {
    const Rational& cb = cost_[basic_[i]];
    if (cb.is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& t = at(i, j);
      if (!t.is_zero()) red_[j].sub_mul(cb, t);
    }
  }
}

bool SimplexSession::in_bounds(std::size_t var, const Rational& v) const {
  if (lo_[var] && v < *lo_[var]) return false;
  if (hi_[var] && v > *hi_[var]) return false;
  return true;
}

void SimplexSession::pivot(std::size_t r, std::size_t q) {
  ++pivots_;
  const Rational inv = at(r, q).inverse();
  std::vector<std::size_t> nz;
  nz.reserve(cols_);
  for (std::size_t k = 0; k < cols_; ++k) {
    Rational& t = at(r, k);
    if (t.is_zero()) continue;
    if (k == q) {
      t = Rational(1);
    } else {
      t *= inv;
    }
    nz.push_back(k);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    const Rational f = at(i, q);
    if (f.is_zero()) continue;
    Rational* row = &tab_[i * cols_];
    const Rational* prow = &tab_[r * cols_];
    for (std::size_t k : nz) row[k].sub_mul(f, prow[k]);
  }
  if (!red_[q].is_zero()) {
    const Rational f = red_[q];
    const Rational* prow = &tab_[r * cols_];
    for (std::size_t k : nz) red_[k].sub_mul(f, prow[k]);
  }
  const std::size_t leaving = basic_[r];
  row_of_[leaving] = kNone;
  basic_[r] = q;
  row_of_[q] = r;
  state_[q] = NbState::kBasic;
}

LpStatus SimplexSession::primal_simplex() {
  for (;;) {
    std::size_t q = kNone;
    int dir = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const NbState s = state_[j];
      if (s == NbState::kBasic) continue;
      if (lo_[j] && hi_[j] && *lo_[j] == *hi_[j]) continue;
      const int sg = red_[j].sign();
      if (sg < 0 && (s == NbState::kLower || s == NbState::kFree)) {
        q = j;
        dir = 1;
        break;
      }
      if (sg > 0 && (s == NbState::kUpper || s == NbState::kFree)) {
        q = j;
        dir = -1;
        break;
      }
    }
    if (q == kNone) return LpStatus::kOptimal;

    // Ratio test; ties leave the smallest column index (the entering column
    // itself stands for a bound flip).
    std::optional<Rational> best;
    std::size_t best_var = kNone;
    std::size_t best_row = kNone;
    if (lo_[q] && hi_[q]) {
      best = *hi_[q] - *lo_[q];
      best_var = q;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& a = at(i, q);
      if (a.is_zero()) continue;
      const std::size_t b = basic_[i];
      // x_b moves by -dir * a per unit step.
      const bool decreasing = (dir > 0) == (a.sign() > 0);
      std::optional<Rational> theta;
      if (decreasing && lo_[b]) {
        theta = (xval_[b] - *lo_[b]) / a.abs();
      } else if (!decreasing && hi_[b]) {
        theta = (*hi_[b] - xval_[b]) / a.abs();
      }
      if (!theta) continue;
      if (!best || *theta < *best || (*theta == *best && b < best_var)) {
        best = std::move(theta);
        best_var = b;
        best_row = i;
      }
    }
    if (!best) return LpStatus::kUnbounded;

    const Rational step = dir > 0 ? *best : -*best;
    if (!step.is_zero()) {
      xval_[q] += step;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = at(i, q);
        if (!a.is_zero()) xval_[basic_[i]].sub_mul(a, step);
      }
    }
    if (best_var == q) {
      state_[q] = dir > 0 ? NbState::kUpper : NbState::kLower;
      xval_[q] = dir > 0 ? *hi_[q] : *lo_[q];
      continue;
    }
    const std::size_t b = best_var;
    const bool to_lower = (dir > 0) == (at(best_row, q).sign() > 0);
    pivot(best_row, q);
    state_[b] = to_lower ? NbState::kLower : NbState::kUpper;
    xval_[b] = to_lower ? *lo_[b] : *hi_[b];
  }
}

LpStatus SimplexSession::dual_simplex() {
  for (;;) {
    std::size_t b = kNone;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == NbState::kBasic && !in_bounds(j, xval_[j])) {
        b = j;
        break;
      }
    }
    if (b == kNone) return LpStatus::kOptimal;
    const std::size_t r = row_of_[b];
    const bool below = lo_[b] && xval_[b] < *lo_[b];
    const Rational target = below ? *lo_[b] : *hi_[b];

    std::size_t q = kNone;
    Rational best;
    for (std::size_t j = 0; j < cols_; ++j) {
      const NbState s = state_[j];
      if (s == NbState::kBasic) continue;
      if (lo_[j] && hi_[j] && *lo_[j] == *hi_[j]) continue;
      const Rational& a = at(r, j);
      if (a.is_zero()) continue;
      // Increasing x_j changes x_b by -a.
      const bool up_helps = below ? a.sign() < 0 : a.sign() > 0;
      const bool can_up = s == NbState::kLower || s == NbState::kFree;
      const bool can_down = s == NbState::kUpper || s == NbState::kFree;
      if (!((up_helps && can_up) || (!up_helps && can_down))) continue;
      Rational ratio = (red_[j] / a).abs();
      if (q == kNone || ratio < best) {
        best = std::move(ratio);
        q = j;
      }
    }
    if (q == kNone) return LpStatus::kInfeasible;

    const Rational delta = (xval_[b] - target) / at(r, q);
    xval_[q] += delta;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& a = at(i, q);
      if (!a.is_zero() && basic_[i] != b) xval_[basic_[i]].sub_mul(a, delta);
    }
    pivot(r, q);
    state_[b] = below ? NbState::kLower : NbState::kUpper;
    xval_[b] = target;
  }
}

bool SimplexSession::phase1() {
  LpStatus st = primal_simplex();
  (void)st;  // phase-1 objective is bounded below by zero
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t b = basic_[i];
    if (b >= n_ + m_ && !xval_[b].is_zero()) return false;
  }
  for (std::size_t j = n_ + m_; j < cols_; ++j) {
    if (state_[j] != NbState::kBasic && !xval_[j].is_zero()) return false;
  }
  // Drive basic artificials out where a non-artificial pivot exists.
  for (std::size_t i = 0; i < m_; ++i) {
    if (basic_[i] < n_ + m_) continue;
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (state_[j] != NbState::kBasic && !at(i, j).is_zero()) {
        const std::size_t art = basic_[i];
        pivot(i, j);
        state_[art] = NbState::kLower;
        xval_[art] = Rational(0);
        break;
      }
    }
  }
  // Drop nonbasic artificials; basic ones (redundant rows) stay fixed at 0.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (j < n_ + m_ || state_[j] == NbState::kBasic) keep.push_back(j);
  }
  if (keep.size() != cols_) {
    const std::size_t nc = keep.size();
    std::vector<Rational> tab(m_ * nc);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < nc; ++k) tab[i * nc + k] = std::move(at(i, keep[k]));
    }
    std::vector<Bound> lo(nc), hi(nc);
    std::vector<NbState> state(nc);
    std::vector<Rational> xval(nc);
    std::vector<std::size_t> row_of(nc, kNone);
    for (std::size_t k = 0; k < nc; ++k) {
      lo[k] = std::move(lo_[keep[k]]);
      hi[k] = std::move(hi_[keep[k]]);
      state[k] = state_[keep[k]];
      xval[k] = std::move(xval_[keep[k]]);
      if (state[k] == NbState::kBasic) {
        row_of[k] = row_of_[keep[k]];
        basic_[row_of[k]] = k;
      }
    }
    tab_ = std::move(tab);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    state_ = std::move(state);
    xval_ = std::move(xval);
    row_of_ = std::move(row_of);
    cols_ = nc;
  }
  for (std::size_t j = n_ + m_; j < cols_; ++j) {
    lo_[j] = Rational(0);
    hi_[j] = Rational(0);
  }
  return true;
}

bool SimplexSession::dual_feasible() const {
  for (std::size_t j = 0; j < cols_; ++j) {
    const NbState s = state_[j];
    if (s == NbState::kBasic) continue;
    if (lo_[j] && hi_[j] && *lo_[j] == *hi_[j]) continue;
    const int sg = red_[j].sign();
    if (s == NbState::kLower && sg < 0) return false;
    if (s == NbState::kUpper && sg > 0) return false;
    if (s == NbState::kFree && sg != 0) return false;
  }
  return true;
}

void SimplexSession::set_bounds(std::size_t var, Bound lo, Bound hi) {
  if (var >= n_) throw InputError("set_bounds: variable index out of range");
  if (lo && hi && *lo > *hi) throw InputError("set_bounds: lower bound above upper bound");
  lo_[var] = std::move(lo);
  hi_[var] = std::move(hi);
  if (!solved_once_ || state_[var] == NbState::kBasic) return;
  Rational old = xval_[var];
  if (state_[var] == NbState::kLower && lo_[var]) {
    xval_[var] = *lo_[var];
  } else if (state_[var] == NbState::kUpper && hi_[var]) {
    xval_[var] = *hi_[var];
  } else {
    place_nonbasic(var);
  }
  const Rational delta = xval_[var] - old;
  if (delta.is_zero()) return;
  for (std::size_t i = 0; i < m_; ++i) {
    const Rational& a = at(i, var);
    if (!a.is_zero()) xval_[basic_[i]].sub_mul(a, delta);
  }
}

LpStatus SimplexSession::solve() {
  if (!solved_once_) {
    solved_once_ = true;
    if (!phase1()) {
      status_ = LpStatus::kInfeasible;
      return status_;
    }
    phase2_ready_ = true;
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = Rational(0);
    cost_.resize(cols_);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = original_->objective[j];
    recompute_reduced_costs();
    status_ = primal_simplex();
    return status_;
  }
  if (!phase2_ready_ || !dual_feasible()) {
    // Rebuild from the stored program with the current bounds.
    LinearProgram lp = *original_;
    for (std::size_t j = 0; j < n_; ++j) {
      lp.lower[j] = lo_[j];
      lp.upper[j] = hi_[j];
    }
    std::size_t pivots = pivots_;
    *this = SimplexSession(lp);
    pivots_ += pivots;
    return solve();
  }
  status_ = dual_simplex();
  if (status_ == LpStatus::kInfeasible) return status_;
  status_ = primal_simplex();
  return status_;
}

Rational SimplexSession::value(std::size_t var) const { return xval_[var]; }

RationalVector SimplexSession::primal() const {
  return RationalVector(xval_.begin(), xval_.begin() + static_cast<std::ptrdiff_t>(n_));
}

Rational SimplexSession::objective() const {
  Rational s;
  for (std::size_t j = 0; j < n_; ++j) s.add_mul(original_->objective[j], xval_[j]);
  return s;
}

RationalVector SimplexSession::duals() const {
  RationalVector y(m_);
  for (std::size_t i = 0; i < m_; ++i) y[i] = red_[n_ + i];
  return y;
}

std::vector<std::size_t> SimplexSession::basis() const {
  std::vector<std::size_t> b(basic_.begin(), basic_.end());
  std::sort(b.begin(), b.end());
  return b;
}

// ---------------------------------------------------------------------------

LpSolution solve_lp(const LinearProgram& lp) {
  SimplexSession session(lp);
  LpSolution sol;
  sol.status = session.solve();
  sol.pivots = session.pivots();
  if (sol.status == LpStatus::kOptimal) {
    sol.primal = session.primal();
    sol.objective = session.objective();
    sol.duals = session.duals();
    sol.basis = session.basis();
  }
  return sol;
}

Rational dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  Rational d;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) d.add_mul(sol.duals[i], lp.rows[i].rhs);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational red = lp.objective[j];
    for (std::size_t i = 0; i < lp.num_rows(); ++i) red.sub_mul(sol.duals[i], lp.rows[i].coef[j]);
    if (red.sign() > 0) {
      if (!lp.lower[j]) throw std::logic_error("dual objective: positive reduced cost on unbounded-below variable");
      d.add_mul(red, *lp.lower[j]);
    } else if (red.sign() < 0) {
      if (!lp.upper[j]) throw std::logic_error("dual objective: negative reduced cost on unbounded-above variable");
      d.add_mul(red, *lp.upper[j]);
    }
  }
  return d;
}

bool certifies_optimality(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::kOptimal) return false;
  const std::size_t n = lp.num_vars();
  if (sol.primal.size() != n || sol.duals.size() != lp.num_rows()) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j] && sol.primal[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && sol.primal[j] > *lp.upper[j]) return false;
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const LpRow& row = lp.rows[i];
    const Rational act = dot(row.coef, sol.primal);
    const int y = sol.duals[i].sign();
    switch (row.rel) {
      case Relation::kLe:
        if (act > row.rhs || y > 0) return false;
        break;
      case Relation::kGe:
        if (act < row.rhs || y < 0) return false;
        break;
      case Relation::kEq:
        if (act != row.rhs) return false;
        break;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational red = lp.objective[j];
    for (std::size_t i = 0; i < lp.num_rows(); ++i) red.sub_mul(sol.duals[i], lp.rows[i].coef[j]);
    if (red.sign() > 0 && !lp.lower[j]) return false;
    if (red.sign() < 0 && !lp.upper[j]) return false;
  }
  if (dot(lp.objective, sol.primal) != sol.objective) return false;
  return dual_objective(lp, sol) == sol.objective;
}

void write_lp(std::ostream& os, const LinearProgram& lp, const std::vector<bool>* integer) {
  auto term_list = [&](const RationalVector& coef) {
    bool any = false;
    for (std::size_t j = 0; j < coef.size(); ++j) {
      if (coef[j].is_zero()) continue;
      os << ' ' << (coef[j].sign() < 0 ? '-' : '+') << ' ' << coef[j].abs().str() << " x" << j;
      any = true;
    }
    if (!any) os << " 0/1";
  };
  os << "minimize\n obj:";
  term_list(lp.objective);
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const LpRow& row = lp.rows[i];
    os << " c" << i << ':';
    term_list(row.coef);
    os << (row.rel == Relation::kLe ? " <= " : row.rel == Relation::kGe ? " >= " : " = ") << row.rhs.str() << '\n';
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    os << ' ' << (lp.lower[j] ? lp.lower[j]->str() : std::string("-inf")) << " <= x" << j << " <= "
       << (lp.upper[j] ? lp.upper[j]->str() : std::string("+inf")) << '\n';
  }
  if (integer) {
    os << "general\n";
    for (std::size_t j = 0; j < integer->size(); ++j) {
      if ((*integer)[j]) os << " x" << j << '\n';
    }
  }
  os << "end\n";
}

std::string lp_to_string(const LinearProgram& lp, const std::vector<bool>* integer) {
  std::ostringstream os;
  write_lp(os, lp, integer);
  return os.str();
}

}  // namespace hmo

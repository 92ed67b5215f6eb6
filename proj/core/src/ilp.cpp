#include "hmo/ilp.hpp"

#include <stdexcept>
#include <string>

namespace hmo {

std::size_t IntegerProgram::add_variable(Rational cost, Bound lo, Bound hi, bool is_integer) {
  const std::size_t j = base.add_variable(std::move(cost), std::move(lo), std::move(hi));
  integer.resize(base.num_vars(), false);
  integer[j] = is_integer;
  if (!convex_cost.empty()) convex_cost.resize(base.num_vars());
  return j;
}

void IntegerProgram::set_convex_cost(std::size_t var, RationalVector table) {
  convex_cost.resize(base.num_vars());
  convex_cost[var] = std::move(table);
}

void IntegerProgram::validate() const {
  base.validate();
  if (integer.size() != base.num_vars()) throw InputError("integrality flags do not match the variable count");
  if (!convex_cost.empty() && convex_cost.size() != base.num_vars()) {
    throw InputError("convex cost tables do not match the variable count");
  }
  for (std::size_t j = 0; j < base.num_vars(); ++j) {
    if (integer[j] && (!base.lower[j] || !base.upper[j])) {
      throw InputError("integer variable x" + std::to_string(j) + " needs finite bounds");
    }
    if (convex_cost.empty() || !convex_cost[j]) continue;
    if (!integer[j]) throw InputError("convex cost table on continuous variable x" + std::to_string(j));
    if (!base.lower[j]->is_integer() || !base.upper[j]->is_integer()) {
      throw InputError("convex cost table on x" + std::to_string(j) + " needs integral bounds");
    }
    const Rational len = *base.upper[j] - *base.lower[j] + 1;
    if (Rational(static_cast<long long>(convex_cost[j]->size())) != len) {
      throw InputError("convex cost table of x" + std::to_string(j) + " has the wrong length");
    }
    linearize_separable_convex(*convex_cost[j]);
  }
}

Rational IntegerProgram::evaluate(const RationalVector& x) const {
  Rational v = dot(base.objective, x);
  for (std::size_t j = 0; j < convex_cost.size(); ++j) {
    if (!convex_cost[j]) continue;
    const std::int64_t k = (x[j] - *base.lower[j]).to_int64();
    v += (*convex_cost[j])[static_cast<std::size_t>(k)];
  }
  return v;
}

ConvexSegments linearize_separable_convex(const RationalVector& values) {
  if (values.empty()) throw InputError("empty convex cost table");
  ConvexSegments seg;
  seg.base_value = values[0];
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    Rational m = values[k + 1] - values[k];
    if (!seg.marginals.empty() && m < seg.marginals.back()) {
      throw NonConvexError(k, "cost table is not convex at index " + std::to_string(k));
    }
    seg.marginals.push_back(std::move(m));
  }
  return seg;
}

const char* to_string(IlpStatus s) {
  switch (s) {
    case IlpStatus::kOptimal:
      return "optimal";
    case IlpStatus::kInfeasible:
      return "infeasible";
    case IlpStatus::kUnbounded:
      return "unbounded";
    case IlpStatus::kFeasible:
      return "feasible";
    case IlpStatus::kNodeLimit:
      return "node-limit";
  }
  return "unknown";
}

IlpModel::IlpModel(const IntegerProgram& ip) : ip_(ip) {
  ip_.validate();
  n_ = ip_.num_vars();
  lp_ = ip_.base;
  // Integer boxes are rounded inward.
  for (std::size_t j = 0; j < n_; ++j) {
    if (!ip_.integer[j]) continue;
    lp_.lower[j] = lp_.lower[j]->ceil();
    lp_.upper[j] = lp_.upper[j]->floor();
    if (*lp_.lower[j] > *lp_.upper[j]) {
      empty_box_ = true;
      lp_.upper[j] = lp_.lower[j];
    }
  }
  integral_objective_ = true;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!lp_.objective[j].is_zero() && (!ip_.integer[j] || !lp_.objective[j].is_integer())) {
      integral_objective_ = false;
    }
  }
  for (std::size_t j = 0; j < ip_.convex_cost.size(); ++j) {
    if (!ip_.convex_cost[j]) continue;
    ConvexSegments seg = linearize_separable_convex(*ip_.convex_cost[j]);
    offset_ += seg.base_value;
    if (!seg.base_value.is_integer()) integral_objective_ = false;
    RationalVector row(lp_.num_vars());
    row[j] = Rational(1);
    for (Rational& m : seg.marginals) {
      if (!m.is_integer()) integral_objective_ = false;
      const std::size_t d = lp_.add_variable(std::move(m), Rational(0), Rational(1));
      row.resize(lp_.num_vars());
      row[d] = Rational(-1);
    }
    lp_.add_row(std::move(row), Relation::kEq, *ip_.base.lower[j]);
  }
}

struct IlpModel::Search {
  const IlpModel& model;
  const IlpOptions& options;
  IlpResult result;
  std::optional<Rational> incumbent;
  std::size_t incumbents = 0;
  bool stop = false;
  bool unbounded = false;
  std::optional<Rational> root_bound;

  void run(SimplexSession& s) {
    const std::size_t before = s.pivots();
    const LpStatus st = s.solve();
    result.pivots += s.pivots() - before;
    ++result.lp_solves;
    if (st == LpStatus::kInfeasible) return;
    if (st == LpStatus::kUnbounded) {
      unbounded = true;
      stop = true;
      return;
    }
    Rational bound = s.objective() + model.offset_;
    if (model.integral_objective_) bound = bound.ceil();
    if (!root_bound) root_bound = bound;
    if (incumbent && bound >= *incumbent) return;
    for (std::size_t j = 0; j < model.n_; ++j) {
      if (!model.ip_.integer[j]) continue;
      const Rational v = s.value(j);
      if (v.is_integer()) continue;
      if (options.node_limit && result.nodes + 1 > *options.node_limit) {
        stop = true;
        return;
      }
      {
        SimplexSession child = s;
        child.set_bounds(j, s.lower(j), v.floor());
        ++result.nodes;
        run(child);
      }
      if (stop) return;
      if (options.node_limit && result.nodes + 1 > *options.node_limit) {
        stop = true;
        return;
      }
      s.set_bounds(j, v.ceil(), s.upper(j));
      ++result.nodes;
      run(s);
      return;
    }
    RationalVector x = s.primal();
    x.resize(model.n_);
    incumbent = model.ip_.evaluate(x);
    result.values = std::move(x);
    ++incumbents;
    if (options.incumbent_limit && incumbents >= *options.incumbent_limit) stop = true;
  }
};

IlpResult IlpModel::branch_and_bound(SimplexSession session, const IlpOptions& options) const {
  if (empty_box_) return IlpResult{};
  Search search{*this, options, {}, std::nullopt, 0, false, false, std::nullopt};
  search.run(session);
  IlpResult r = std::move(search.result);
  if (search.unbounded) {
    r.status = IlpStatus::kUnbounded;
    r.values.clear();
    return r;
  }
  if (search.incumbent) {
    r.objective = *search.incumbent;
    const bool proven = !search.stop || (search.root_bound && *search.incumbent <= *search.root_bound);
    r.status = proven ? IlpStatus::kOptimal : IlpStatus::kFeasible;
    return r;
  }
  r.status = search.stop ? IlpStatus::kNodeLimit : IlpStatus::kInfeasible;
  return r;
}

IlpResult solve_ilp(const IntegerProgram& ip, const IlpOptions& options) {
  IlpModel model(ip);
  return model.branch_and_bound(model.make_session(), options);
}

IlpResult solve_ilp_lexmin(const IntegerProgram& ip) {
  IlpModel model(ip);
  IlpResult best = model.branch_and_bound(model.make_session());
  if (best.status != IlpStatus::kOptimal) return best;
  // Segment columns stay continuous: any integral original point meeting the
  // cut with some segment filling also meets it with the cheapest filling.
  IntegerProgram lex;
  lex.base = model.relaxation();
  lex.integer.assign(lex.base.num_vars(), false);
  const std::size_t n = ip.num_vars();
  for (std::size_t j = 0; j < n; ++j) lex.integer[j] = ip.integer[j];
  lex.base.add_row(lex.base.objective, Relation::kLe, best.objective - model.objective_offset());
  IlpResult step;
  for (std::size_t j = 0; j < n; ++j) {
    lex.base.objective.assign(lex.base.num_vars(), Rational(0));
    lex.base.objective[j] = Rational(1);
    step = solve_ilp(lex);
    best.nodes += step.nodes;
    best.lp_solves += step.lp_solves;
    best.pivots += step.pivots;
    if (step.status != IlpStatus::kOptimal) throw std::logic_error("solve_ilp_lexmin: cut program lost feasibility");
    lex.base.lower[j] = step.values[j];
    lex.base.upper[j] = step.values[j];
  }
  if (n > 0) {
    step.values.resize(n);
    best.values = std::move(step.values);
  }
  return best;
}

}  // namespace hmo

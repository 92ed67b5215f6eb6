#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hmo/errors.hpp"
#include "hmo/scheduling.hpp"

namespace hmo {
namespace {

Rational rat(std::int64_t v) { return Rational(static_cast<long long>(v)); }

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// Cycle C lies within [t_ℓ, t_k].
bool inside(const Cycle& c, std::size_t l, std::size_t k) { return c.left >= l && c.right <= k; }

// w_{k,j}: the weight that still accrues after t_k.
std::int64_t segment_weight(const MachineJobs& jobs, const std::vector<std::int64_t>& times, std::size_t k,
                            std::size_t j, const ObjectiveSpec& objective) {
  if (objective.kind != ObjectiveSpec::Kind::kSumWT) return jobs.weight[j];
  return jobs.due[j] && times[k] >= *jobs.due[j] ? jobs.weight[j] : 0;
}

}  // namespace

std::string Cycle::name() const {
  if (!external) return "int" + idx(left);
  return "ext" + idx(first()) + "_" + idx(last());
}

std::vector<std::int64_t> critical_times(const MachineJobs& jobs, const ObjectiveSpec& objective) {
  std::vector<std::int64_t> t;
  for (std::size_t j = 0; j < jobs.d(); ++j) {
    if (!jobs.usable[j] || jobs.count[j] == 0) continue;
    t.push_back(jobs.release[j]);
    if (jobs.due[j]) t.push_back(*jobs.due[j]);
  }
  if (objective.kind == ObjectiveSpec::Kind::kSumWT) t.push_back(jobs.horizon());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::vector<Cycle> potential_cycles(std::size_t num_times) {
  std::vector<Cycle> out;
  if (num_times < 2) return out;
  for (std::size_t k = 0; k + 1 < num_times; ++k) {
    out.push_back({false, k, k + 1});
    // External cycles whose first interior critical time is t_{k+1}.
    for (std::size_t b = k + 1; b + 2 <= num_times; ++b) out.push_back({true, k, b + 1});
  }
  return out;
}

bool chi(const MachineJobs& jobs, const std::vector<std::int64_t>& times, std::size_t j, const Cycle& c,
         const ObjectiveSpec& objective) {
  if (!jobs.usable[j]) return false;
  if (jobs.release[j] > times[c.left]) return false;
  const bool relaxed = objective.kind == ObjectiveSpec::Kind::kSumWT;
  if (!relaxed && jobs.due[j] && times[c.right] > *jobs.due[j]) return false;
  if (!c.external) return true;
  const std::int64_t dur = jobs.duration(j);
  if (times[c.right] - times[c.left] < dur) return false;
  const std::int64_t span = times[c.last()] - times[c.first()];
  // Unit speed: integral starts force the job to cover span + 2 time units.
  if (jobs.speed == Rational(1)) return span <= jobs.size[j] - 2;
  return span < dur;
}

bool incompatible(const Cycle& a, const Cycle& b) {
  if (a.external == b.external && a.left == b.left && a.right == b.right) return false;
  auto blocks = [](const Cycle& e, const Cycle& c) {
    if (!c.external) return e.first() <= c.left && c.right <= e.last();
    return c.first() <= e.last() && e.first() <= c.last();
  };
  if (a.external && blocks(a, b)) return true;
  if (b.external && blocks(b, a)) return true;
  return false;
}

std::vector<std::size_t> smith_order(const MachineJobs& jobs, const std::vector<std::int64_t>& times, std::size_t k,
                                     const ObjectiveSpec& objective) {
  std::vector<std::size_t> order(jobs.d());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int64_t> w(jobs.d());
  for (std::size_t j = 0; j < jobs.d(); ++j) w[j] = segment_weight(jobs, times, k, j, objective);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<__int128>(w[a]) * jobs.duration(b) > static_cast<__int128>(w[b]) * jobs.duration(a);
  });
  return order;
}

// ---------------------------------------------------------------------------
// CycleModel

std::size_t CycleModel::add_var(std::string name, std::int64_t lo, std::int64_t hi) {
  names.push_back(std::move(name));
  lower.push_back(lo);
  upper.push_back(hi);
  linear.emplace_back(0);
  return names.size() - 1;
}

void CycleModel::add_row(ModelRow row) {
  std::map<std::size_t, std::int64_t> merged;
  for (const auto& [v, a] : row.coef) merged[v] += a;
  row.coef.clear();
  for (const auto& [v, a] : merged) {
    if (a != 0) row.coef.emplace_back(v, a);
  }
  rows.push_back(std::move(row));
}

std::size_t CycleModel::constraint_rows() const {
  std::size_t n = 0;
  for (const ModelRow& r : rows) n += r.relation == Relation::kEq ? 2 : 1;
  return n;
}

std::int64_t CycleModel::max_coefficient() const {
  std::int64_t m = 0;
  for (const ModelRow& r : rows) {
    for (const auto& [v, a] : r.coef) m = std::max(m, a < 0 ? -a : a);
  }
  return m;
}

MimoType CycleModel::to_mimo(std::int64_t multiplicity) const {
  const std::size_t n = num_vars();
  std::vector<std::vector<long long>> a;
  Config b;
  auto push = [&](const std::vector<std::pair<std::size_t, std::int64_t>>& coef, std::int64_t sign, std::int64_t rhs) {
    std::vector<long long> row(n, 0);
    for (const auto& [v, c] : coef) row[v] = sign * c;
    a.push_back(std::move(row));
    b.push_back(sign * rhs);
  };
  for (const ModelRow& r : rows) {
    if (r.relation != Relation::kGe) push(r.coef, 1, r.rhs);
    if (r.relation != Relation::kLe) push(r.coef, -1, r.rhs);
  }
  for (std::size_t v = 0; v < n; ++v) {
    push({{v, 1}}, 1, upper[v]);
    push({{v, 1}}, -1, lower[v]);
  }
  MimoType tp;
  tp.aux = n - jobs.d();
  tp.a = IntegerMatrix::from_rows(a, n);
  tp.b = std::move(b);
  tp.multiplicity = multiplicity;
  for (std::size_t v = 0; v < n; ++v) {
    if (linear[v].is_zero()) continue;
    MimoObjectiveTerm term;
    term.coordinates = {v};
    term.linear = linear[v];
    tp.objective.push_back(std::move(term));
  }
  for (const auto& [v, table] : tables) {
    MimoObjectiveTerm term;
    term.coordinates = {v};
    term.table = table;
    term.table_lower = lower[v];
    tp.objective.push_back(std::move(term));
  }
  return tp;
}

Rational CycleModel::evaluate(const Config& values) const {
  Rational f;
  for (std::size_t v = 0; v < num_vars(); ++v) {
    if (!linear[v].is_zero()) f.add_mul(linear[v], rat(values.at(v)));
  }
  for (const auto& [v, table] : tables) f += table.at(static_cast<std::size_t>(values.at(v) - lower[v]));
  return f;
}

std::vector<std::string> CycleModel::check(const Config& values) const {
  std::vector<std::string> out;
  if (values.size() != num_vars()) {
    out.push_back("expected " + std::to_string(num_vars()) + " values, got " + std::to_string(values.size()));
    return out;
  }
  for (std::size_t v = 0; v < num_vars(); ++v) {
    if (values[v] < lower[v] || values[v] > upper[v]) out.push_back(names[v] + " out of bounds");
  }
  for (const ModelRow& r : rows) {
    __int128 lhs = 0;
    for (const auto& [v, a] : r.coef) lhs += static_cast<__int128>(a) * values[v];
    const bool ok = r.relation == Relation::kLe ? lhs <= r.rhs : r.relation == Relation::kGe ? lhs >= r.rhs : lhs == r.rhs;
    if (!ok) out.push_back(r.family + " row violated");
  }
  return out;
}

std::string CycleModel::dump() const {
  std::ostringstream os;
  os << "\\ kind " << idx(jobs.machine.kind) << " speed " << jobs.machine.speed.short_str() << " objective "
     << objective.str() << " time_scale " << jobs.time_scale << "\n";
  os << "\\ critical times";
  for (std::int64_t t : times) os << ' ' << t;
  os << "\n\\ rows " << constraint_rows() << " max_coefficient " << max_coefficient() << "\n";
  os << "Minimize\n obj:";
  bool any = false;
  for (std::size_t v = 0; v < num_vars(); ++v) {
    if (linear[v].is_zero()) continue;
    os << (linear[v].sign() < 0 ? " - " : " + ") << (linear[v].sign() < 0 ? -linear[v] : linear[v]).short_str() << ' '
       << names[v];
    any = true;
  }
  if (!any) os << " 0";
  os << "\n";
  for (const auto& [v, table] : tables) {
    os << "\\ table " << names[v] << " from " << lower[v] << ':';
    for (const Rational& q : table) os << ' ' << q.short_str();
    os << "\n";
  }
  os << "Subject To\n";
  std::map<std::string, std::size_t> seen;
  for (const ModelRow& r : rows) {
    os << ' ' << r.family << '_' << ++seen[r.family] << ':';
    for (const auto& [v, a] : r.coef) os << (a < 0 ? " - " : " + ") << (a < 0 ? -a : a) << ' ' << names[v];
    os << (r.relation == Relation::kLe ? " <= " : r.relation == Relation::kGe ? " >= " : " = ") << r.rhs << "\n";
  }
  os << "Bounds\n";
  for (std::size_t v = 0; v < num_vars(); ++v) os << ' ' << lower[v] << " <= " << names[v] << " <= " << upper[v] << "\n";
  os << "General\n";
  for (std::size_t v = 0; v < num_vars(); ++v) os << ' ' << names[v] << "\n";
  os << "End\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Emission

namespace {

using Coef = std::vector<std::pair<std::size_t, std::int64_t>>;

CycleModel emit(const MachineJobs& jobs, const ObjectiveSpec& objective, const std::optional<std::int64_t>& min_load,
                bool ordered) {
  CycleModel m;
  m.jobs = jobs;
  m.objective = objective;
  const std::size_t d = jobs.d();
  m.times = critical_times(jobs, objective);
  m.cycles = potential_cycles(m.times.size());
  const auto& t = m.times;
  const std::size_t nc = m.cycles.size();
  m.chi.assign(d, std::vector<bool>(nc, false));
  for (std::size_t j = 0; j < d; ++j) {
    if (jobs.count[j] == 0) continue;
    for (std::size_t c = 0; c < nc; ++c) m.chi[j][c] = chi(jobs, t, j, m.cycles[c], objective);
  }
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      if (incompatible(m.cycles[a], m.cycles[b])) m.incompatible_pairs.emplace_back(a, b);
    }
  }

  for (std::size_t j = 0; j < d; ++j) m.x.push_back(m.add_var("x_" + idx(j), 0, jobs.count[j]));
  m.y.assign(d, std::vector<std::size_t>(nc, CycleModel::kNone));
  m.z.assign(nc, CycleModel::kNone);
  for (std::size_t c = 0; c < nc; ++c) {
    const Cycle& cy = m.cycles[c];
    for (std::size_t j = 0; j < d; ++j) {
      if (m.chi[j][c]) m.y[j][c] = m.add_var("y_" + idx(j) + "_" + cy.name(), 0, cy.external ? 1 : jobs.count[j]);
    }
    if (!cy.external) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (m.chi[j][c]) {
        m.z[c] = m.add_var("z_" + cy.name(), 0, 1);
        break;
      }
    }
  }

  // Split of each external job at its last interior critical time.
  m.left_part.assign(nc, {});
  m.right_part.assign(nc, {});
  m.product.assign(d, std::vector<std::map<std::int64_t, std::size_t>>(nc));
  if (ordered) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (m.z[c] == CycleModel::kNone) continue;
      const Cycle& cy = m.cycles[c];
      std::int64_t pmax = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (m.chi[j][c]) pmax = std::max(pmax, jobs.size[j]);
      }
      const std::int64_t lo_l = std::max<std::int64_t>(1, t[cy.last()] - t[cy.first()] + 1);
      const std::int64_t hi_l = std::min(pmax - 1, t[cy.last()] - t[cy.left]);
      const std::int64_t hi_r = std::min(pmax - 1, t[cy.right] - t[cy.last()]);
      for (std::int64_t p = lo_l; p <= hi_l; ++p) {
        m.left_part[c][p] = m.add_var("yl_" + cy.name() + "_" + std::to_string(p), 0, 1);
      }
      for (std::int64_t p = 1; p <= hi_r; ++p) {
        m.right_part[c][p] = m.add_var("yr_" + cy.name() + "_" + std::to_string(p), 0, 1);
      }
      for (std::size_t j = 0; j < d; ++j) {
        if (!m.chi[j][c]) continue;
        for (std::int64_t p = 1; p <= hi_r; ++p) {
          const std::int64_t l = jobs.size[j] - p;
          if (l < lo_l || l > hi_l) continue;
          m.product[j][c][p] = m.add_var("yp_" + idx(j) + "_" + cy.name() + "_" + std::to_string(p), 0, 1);
        }
      }
    }
  }

  // Σ_C y_{j,C} = x_j
  for (std::size_t j = 0; j < d; ++j) {
    Coef row{{m.x[j], 1}};
    for (std::size_t c = 0; c < nc; ++c) {
      if (m.y[j][c] != CycleModel::kNone) row.emplace_back(m.y[j][c], -1);
    }
    m.add_row({row, Relation::kEq, 0, "assign"});
  }
  // z_C = Σ_j y_{j,C}
  for (std::size_t c = 0; c < nc; ++c) {
    if (m.z[c] == CycleModel::kNone) continue;
    Coef row{{m.z[c], 1}};
    for (std::size_t j = 0; j < d; ++j) {
      if (m.y[j][c] != CycleModel::kNone) row.emplace_back(m.y[j][c], -1);
    }
    m.add_row({row, Relation::kEq, 0, "external"});
  }
  // A used external cycle empties every cycle it conflicts with.
  const std::int64_t pmax = jobs.max_size();
  for (std::size_t c = 0; c < nc; ++c) {
    if (m.z[c] == CycleModel::kNone) continue;
    Coef row;
    for (std::size_t o = 0; o < nc; ++o) {
      if (!incompatible(m.cycles[c], m.cycles[o])) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (m.y[j][o] != CycleModel::kNone) row.emplace_back(m.y[j][o], 1);
      }
    }
    if (row.empty()) continue;
    row.emplace_back(m.z[c], pmax);
    m.add_row({row, Relation::kLe, pmax, "conflict"});
  }
  if (ordered) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (m.z[c] == CycleModel::kNone) continue;
      Coef split, left{{m.z[c], -1}}, right{{m.z[c], -1}};
      for (const auto& [p, v] : m.left_part[c]) {
        split.emplace_back(v, p);
        left.emplace_back(v, 1);
      }
      for (const auto& [p, v] : m.right_part[c]) {
        split.emplace_back(v, p);
        right.emplace_back(v, 1);
      }
      std::vector<std::size_t> eligible;
      for (std::size_t j = 0; j < d; ++j) {
        if (m.y[j][c] == CycleModel::kNone) continue;
        split.emplace_back(m.y[j][c], -jobs.size[j]);
        eligible.push_back(j);
      }
      m.add_row({split, Relation::kEq, 0, "split"});
      m.add_row({left, Relation::kEq, 0, "split_left"});
      m.add_row({right, Relation::kEq, 0, "split_right"});
      // y_{j,C,R,p} = y_{j,C}·y_{C,R,p}: one type per R value, and the type
      // index carried by the products matches the one carried by y_{·,C}.
      for (const auto& [p, v] : m.right_part[c]) {
        Coef row{{v, -1}};
        for (std::size_t j : eligible) {
          auto it = m.product[j][c].find(p);
          if (it != m.product[j][c].end()) row.emplace_back(it->second, 1);
        }
        m.add_row({row, Relation::kEq, 0, "product"});
      }
      if (eligible.size() > 1) {
        Coef row;
        for (std::size_t e = 0; e < eligible.size(); ++e) {
          const std::size_t j = eligible[e];
          const auto label = static_cast<std::int64_t>(e + 1);
          row.emplace_back(m.y[j][c], -label);
          for (const auto& [p, v] : m.product[j][c]) row.emplace_back(v, label);
        }
        m.add_row({row, Relation::kEq, 0, "product_type"});
      }
    }
  }
  // Volume between every pair of critical times.
  for (std::size_t k = 1; k < t.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      Coef row;
      for (std::size_t c = 0; c < nc; ++c) {
        const Cycle& cy = m.cycles[c];
        if (inside(cy, l, k)) {
          for (std::size_t j = 0; j < d; ++j) {
            if (m.y[j][c] != CycleModel::kNone) row.emplace_back(m.y[j][c], jobs.size[j]);
          }
        } else if (ordered && cy.external) {
          if (cy.last() == k && cy.left >= l) {
            for (const auto& [p, v] : m.left_part[c]) row.emplace_back(v, p);
          }
          if (cy.last() == l) {
            for (const auto& [p, v] : m.right_part[c]) row.emplace_back(v, p);
          }
        }
      }
      if (row.empty()) continue;
      const Rational cap = (jobs.speed * rat(t[k] - t[l])).floor();
      m.add_row({row, Relation::kLe, cap.to_int64(), "volume"});
    }
  }
  if (min_load) {
    Coef row;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        if (m.y[j][c] != CycleModel::kNone) row.emplace_back(m.y[j][c], jobs.size[j]);
      }
    }
    const std::int64_t need = (jobs.speed * rat(*min_load)).ceil().to_int64();
    if (need > 0 && row.empty()) {
      // No job fits this machine: 0 ≥ need has no solution.
      m.add_row({{{m.x.empty() ? 0 : m.x[0], 0}}, Relation::kGe, need, "load"});
    } else if (!row.empty()) {
      m.add_row({row, Relation::kGe, need, "load"});
    }
  }
  if (objective.kind == ObjectiveSpec::Kind::kLp) {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < d; ++j) total += jobs.usable[j] ? jobs.count[j] * jobs.size[j] : 0;
    m.load = m.add_var("load", 0, total);
    Coef row{{m.load, 1}};
    for (std::size_t j = 0; j < d; ++j) {
      if (jobs.usable[j] && jobs.count[j] > 0) row.emplace_back(m.x[j], -jobs.size[j]);
    }
    m.add_row({row, Relation::kEq, 0, "load"});
    // (size / s)^p in original time units.
    RationalVector table;
    for (std::int64_t v = 0; v <= total; ++v) {
      const Rational l = rat(v) / jobs.machine.speed;
      Rational pw(1);
      for (unsigned e = 0; e < objective.power; ++e) pw *= l;
      table.push_back(pw);
    }
    m.tables[m.load] = std::move(table);
  }
  if (!ordered) return m;

  // Aggregation per segment [t_k, t_{k+1}] and the objective areas.
  const std::size_t segments = t.size() >= 2 ? t.size() - 1 : 0;
  m.alpha.assign(segments, {});
  m.order.assign(segments, {});
  auto internal_of = [&](std::size_t k) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (!m.cycles[c].external && m.cycles[c].left == k) return c;
    }
    throw std::logic_error("missing internal cycle");
  };
  for (std::size_t k = 0; k < segments; ++k) {
    const std::size_t ci = internal_of(k);
    const std::int64_t len = t[k + 1] - t[k];
    std::vector<std::int64_t> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = segment_weight(jobs, t, k, j, objective);
    // Area A: every job completing in (t_k, t_{k+1}] accrues its weight up to t_k.
    auto a_coef = [&](std::size_t j) {
      if (objective.kind == ObjectiveSpec::Kind::kSumWT) return w[j] == 0 ? rat(0) : rat(w[j]) * rat(t[k] - *jobs.due[j]);
      return rat(w[j]) * rat(t[k]);
    };
    std::vector<std::size_t> ending;  // external cycles whose last interior critical time is t_k
    for (std::size_t c = 0; c < nc; ++c) {
      if (m.cycles[c].external && m.cycles[c].last() == k && m.z[c] != CycleModel::kNone) ending.push_back(c);
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (m.y[j][ci] != CycleModel::kNone) m.linear[m.y[j][ci]] += a_coef(j);
      for (std::size_t c : ending) {
        if (m.y[j][c] != CycleModel::kNone) m.linear[m.y[j][c]] += a_coef(j);
      }
    }
    // Area X: the external job's weight times its run past t_k.
    for (std::size_t c : ending) {
      for (std::size_t j = 0; j < d; ++j) {
        for (const auto& [p, v] : m.product[j][c]) m.linear[v] += rat(w[j]) * rat(p);
      }
    }
    // Area B̂.
    for (std::size_t j : smith_order(jobs, t, k, objective)) {
      if (m.y[j][ci] != CycleModel::kNone) m.order[k].push_back(j);
    }
    if (m.order[k].empty()) continue;
    m.alpha[k].assign(d + 1, CycleModel::kNone);
    std::size_t prev = CycleModel::kNone;
    if (!ending.empty()) {
      prev = m.alpha[k][0] = m.add_var("alpha_" + idx(k) + "_0", 0, len);
      Coef row{{prev, 1}};
      for (std::size_t c : ending) {
        for (const auto& [p, v] : m.right_part[c]) row.emplace_back(v, -p);
      }
      m.add_row({row, Relation::kEq, 0, "aggregate"});
    }
    for (std::size_t j : m.order[k]) {
      const std::size_t a = m.alpha[k][1 + j] = m.add_var("alpha_" + idx(k) + "_" + idx(j), 0, len);
      Coef row{{a, 1}, {m.y[j][ci], -jobs.size[j]}};
      if (prev != CycleModel::kNone) row.emplace_back(prev, -1);
      m.add_row({row, Relation::kEq, 0, "aggregate"});
      prev = a;
    }
    const auto& ord = m.order[k];
    auto rho = [&](std::size_t j) { return rat(w[j]) / rat(jobs.size[j]); };
    for (std::size_t e = 0; e < ord.size(); ++e) {
      const std::size_t j = ord[e];
      const Rational coef = (rho(j) - (e + 1 < ord.size() ? rho(ord[e + 1]) : Rational(0))) / Rational(2);
      if (!coef.is_zero()) {
        RationalVector table;
        for (std::int64_t v = 0; v <= len; ++v) table.push_back(coef * rat(v) * rat(v));
        m.tables[m.alpha[k][1 + j]] = std::move(table);
      }
      m.linear[m.y[j][ci]] += rat(w[j]) * rat(jobs.size[j]) / Rational(2);
    }
    // −ρ_first·α_{k,0}² with α_{k,0} = Σ p·y_{C,R,p} and at most one term nonzero.
    const Rational first = rho(ord.front()) / Rational(2);
    for (std::size_t c : ending) {
      for (const auto& [p, v] : m.right_part[c]) m.linear[v] -= first * rat(p) * rat(p);
    }
  }
  if (objective.kind == ObjectiveSpec::Kind::kSumWF) {
    for (std::size_t j = 0; j < d; ++j) m.linear[m.x[j]] -= rat(jobs.weight[j]) * rat(jobs.release[j]);
  }
  return m;
}

}  // namespace

CycleModel emit_cmax_polytope(const MachineJobs& jobs, const ModelRequest& request) {
  if (request.objective.min_sum()) throw InputError("min-sum objectives use the ordered model");
  return emit(jobs, request.objective, request.min_load, false);
}

CycleModel emit_minsum_polytope(const MachineJobs& jobs, const ObjectiveSpec& objective) {
  if (!objective.min_sum()) throw InputError("the ordered model is for Σ w_j C_j, Σ w_j F_j and Σ w_j T_j");
  if (jobs.speed != Rational(1)) throw InputError("min-sum objectives require unit speeds");
  return emit(jobs, objective, std::nullopt, true);
}

// ---------------------------------------------------------------------------
// Reconstruction

MachineSchedule reconstruct_schedule(const CycleModel& m, const Config& values) {
  MachineSchedule out;
  out.kind = m.jobs.machine.kind;
  out.speed_class = m.jobs.machine.speed_class;
  const auto& t = m.times;
  const bool ordered = m.objective.min_sum();
  const Rational scale = rat(m.jobs.time_scale);
  Rational end(std::numeric_limits<std::int64_t>::min());
  auto place = [&](std::size_t j, const Rational& start, const Rational& finish) {
    if (!m.jobs.usable[j]) throw std::logic_error("a job with infinite size was scheduled");
    out.jobs.push_back({j, start / scale, finish / scale});
    end = std::max(end, finish);
  };
  for (std::size_t c = 0; c < m.cycles.size(); ++c) {
    const Cycle& cy = m.cycles[c];
    if (ordered && cy.external) {
      if (m.z[c] == CycleModel::kNone || values.at(m.z[c]) == 0) continue;
      std::size_t job = m.jobs.d();
      for (std::size_t j = 0; j < m.jobs.d(); ++j) {
        if (m.y[j][c] != CycleModel::kNone && values.at(m.y[j][c]) == 1) job = j;
      }
      std::int64_t l = 0, r = 0;
      for (const auto& [p, v] : m.left_part[c]) l += p * values.at(v);
      for (const auto& [p, v] : m.right_part[c]) r += p * values.at(v);
      if (job == m.jobs.d() || l + r != m.jobs.size[job]) throw std::logic_error("inconsistent external split");
      place(job, rat(t[cy.last()] - l), rat(t[cy.last()] + r));
      continue;
    }
    std::vector<std::size_t> seq;
    if (ordered) {
      seq = m.order[cy.left];
    } else {
      for (std::size_t j = 0; j < m.jobs.d(); ++j) seq.push_back(j);
    }
    for (std::size_t j : seq) {
      if (m.y[j][c] == CycleModel::kNone) continue;
      for (std::int64_t q = 0; q < values.at(m.y[j][c]); ++q) {
        const Rational start = std::max(end, rat(t[cy.left]));
        place(j, start, start + rat(m.jobs.duration(j)));
      }
    }
  }
  std::stable_sort(out.jobs.begin(), out.jobs.end(),
                   [](const ScheduledJob& a, const ScheduledJob& b) { return a.start < b.start; });
  return out;
}

}  // namespace hmo

#include "hmo/mimo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "hmo/errors.hpp"
#include "hmo/lp.hpp"

namespace hmo {
namespace {

Rational rat(std::int64_t v) { return Rational(static_cast<long long>(v)); }

std::string type_name(std::size_t i) { return "type " + std::to_string(i); }

void check_shape(const MimoType& tp, std::size_t d, std::size_t i) {
  if (tp.a.cols != d + tp.aux || tp.a.entries.size() != tp.a.rows * tp.a.cols) {
    throw InputError(type_name(i) + ": constraint matrix must have d + D columns");
  }
  if (tp.b.size() != tp.a.rows) throw InputError(type_name(i) + ": right-hand side length differs from the row count");
  if (tp.multiplicity < 0) throw InputError(type_name(i) + ": negative multiplicity");
}

void check_objective(const MimoType& tp, std::size_t d, std::size_t i) {
  for (const MimoObjectiveTerm& term : tp.objective) {
    if (term.coordinates.size() != 1) {
      throw InputError(type_name(i) + ": objective term over " + std::to_string(term.coordinates.size()) +
                       " coordinates; cross terms are not separable");
    }
    if (term.coordinates[0] >= d + tp.aux) throw InputError(type_name(i) + ": objective coordinate out of range");
    if (!term.linear && !term.table) throw InputError(type_name(i) + ": empty objective term");
    if (term.table) {
      if (term.table->empty()) throw InputError(type_name(i) + ": empty objective table");
      linearize_separable_convex(*term.table);
    }
  }
}

}  // namespace

std::optional<std::pair<Config, Config>> element_box(const MimoType& tp, std::size_t d) {
  const std::size_t n = d + tp.aux;
  std::vector<std::optional<Rational>> lo(n), hi(n);
  LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) lp.add_variable(Rational(0), std::nullopt, std::nullopt);
  for (std::size_t row = 0; row < tp.a.rows; ++row) {
    std::size_t nz = 0, at = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (tp.a.at(row, j) != 0) {
        ++nz;
        at = j;
      }
    }
    const Rational rhs = rat(tp.b[row]);
    if (nz == 0) {
      if (rhs.sign() < 0) return std::nullopt;
      continue;
    }
    if (nz == 1) {
      const Rational a(tp.a.at(row, at));
      const Rational v = rhs / a;
      if (a.sign() > 0) {
        if (!hi[at] || v < *hi[at]) hi[at] = v;
      } else if (!lo[at] || v > *lo[at]) {
        lo[at] = v;
      }
      continue;
    }
    RationalVector coef(n);
    for (std::size_t j = 0; j < n; ++j) coef[j] = Rational(tp.a.at(row, j));
    lp.add_row(std::move(coef), Relation::kLe, rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lo[j] && hi[j] && lo[j]->ceil() > hi[j]->floor()) return std::nullopt;
    lp.lower[j] = lo[j];
    lp.upper[j] = hi[j];
  }
  if (solve_lp(lp).status == LpStatus::kInfeasible) return std::nullopt;
  for (std::size_t j = 0; j < n; ++j) {
    for (int dir : {-1, 1}) {
      std::optional<Rational>& side = dir < 0 ? lo[j] : hi[j];
      if (side) continue;
      LinearProgram probe = lp;
      probe.objective.assign(n, Rational(0));
      probe.objective[j] = Rational(dir < 0 ? 1 : -1);
      const LpSolution sol = solve_lp(probe);
      if (sol.status == LpStatus::kUnbounded) {
        throw InputError("element polytope is unbounded in coordinate " + std::to_string(j));
      }
      side = sol.primal[j];
    }
  }
  Config l(n), h(n);
  for (std::size_t j = 0; j < n; ++j) {
    l[j] = lo[j]->ceil().to_int64();
    h[j] = hi[j]->floor().to_int64();
    if (l[j] > h[j]) return std::nullopt;
  }
  return std::make_pair(std::move(l), std::move(h));
}

MimoParameters validate_instance(const MimoInstance& inst) {
  if (inst.target.size() != inst.d) throw InputError("target length differs from d");
  MimoParameters p;
  p.d = inst.d;
  p.tau = inst.types.size();
  p.delta = 0;
  p.elements = 0;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const MimoType& tp = inst.types[i];
    check_shape(tp, inst.d, i);
    check_objective(tp, inst.d, i);
    try {
      element_box(tp, inst.d);
    } catch (const InputError& e) {
      throw InputError(type_name(i) + ": " + e.what());
    }
    p.m = std::max(p.m, tp.a.rows);
    p.aux = std::max(p.aux, tp.aux);
    p.delta = std::max(p.delta, tp.a.norm_inf());
    p.elements += static_cast<long>(tp.multiplicity);
  }
  p.n_norm = 0;
  for (std::int64_t v : inst.target) p.n_norm = std::max(p.n_norm, mpz_class(static_cast<long>(std::llabs(v))));
  return p;
}

Rational element_cost(const MimoType& tp, std::size_t d, const Config& x, const Config& aux) {
  Rational v;
  for (const MimoObjectiveTerm& term : tp.objective) {
    const std::size_t j = term.coordinates.at(0);
    const std::int64_t val = j < d ? x.at(j) : aux.at(j - d);
    if (term.linear) v.add_mul(*term.linear, rat(val));
    if (term.table) {
      const std::int64_t k = val - term.table_lower;
      if (k < 0 || k >= static_cast<std::int64_t>(term.table->size())) {
        throw InputError("objective table does not cover value " + std::to_string(val));
      }
      v += (*term.table)[static_cast<std::size_t>(k)];
    }
  }
  return v;
}

MimoSolution solve_mimo(const MimoInstance& inst, const NfoldOptions& options) {
  validate_instance(inst);
  const HugeNfoldInstance nf = mimo_to_nfold(inst);
  NfoldSolution ns = reduce_and_solve(nf, options);
  MimoSolution out;
  out.status = ns.status;
  out.stats = ns.stats;
  out.per_type.resize(inst.types.size());
  if (ns.status != NfoldStatus::kOptimal) return out;
  std::vector<std::map<std::pair<Config, Config>, mpz_class>> merged(inst.types.size());
  for (const BrickCount& b : ns.bricks) {
    const std::size_t aux = inst.types[b.type].aux;
    Config x(b.config.begin(), b.config.begin() + static_cast<long>(inst.d));
    Config a(b.config.begin() + static_cast<long>(inst.d), b.config.begin() + static_cast<long>(inst.d + aux));
    merged[b.type][{std::move(x), std::move(a)}] += b.count;
  }
  for (std::size_t i = 0; i < merged.size(); ++i) {
    for (auto& [key, count] : merged[i]) out.per_type[i].push_back({key.first, key.second, count});
  }
  out.objective = ns.objective;
  return out;
}

FixedChargeResult solve_fixed_charge(const MimoInstance& inst, const RationalVector& charge,
                                     const NfoldOptions& options) {
  validate_instance(inst);
  if (charge.size() != inst.types.size()) throw InputError("one charge per type is required");
  constexpr std::size_t kGuessCap = 1000000;
  std::size_t total = 1;
  for (const MimoType& tp : inst.types) {
    const auto choices = static_cast<std::size_t>(tp.multiplicity) + 1;
    if (total > kGuessCap / choices) throw CapacityError("more than 10^6 multiplicity guesses");
    total *= choices;
  }
  struct Guess {
    Rational cost;
    std::vector<std::int64_t> used;
  };
  std::vector<Guess> guesses;
  guesses.reserve(total);
  std::vector<std::int64_t> used(inst.types.size(), 0);
  for (;;) {
    Rational c;
    for (std::size_t i = 0; i < used.size(); ++i) c.add_mul(charge[i], rat(used[i]));
    guesses.push_back({std::move(c), used});
    std::size_t i = 0;
    while (i < used.size() && used[i] == inst.types[i].multiplicity) used[i++] = 0;
    if (i == used.size()) break;
    ++used[i];
  }
  std::sort(guesses.begin(), guesses.end(), [](const Guess& a, const Guess& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.used < b.used;
  });
  FixedChargeResult out;
  MimoInstance trial = inst;
  for (const Guess& g : guesses) {
    ++out.guesses;
    for (std::size_t i = 0; i < g.used.size(); ++i) trial.types[i].multiplicity = g.used[i];
    MimoSolution sol = solve_mimo(trial, options);
    if (sol.status != NfoldStatus::kOptimal) continue;
    out.status = NfoldStatus::kOptimal;
    out.used = g.used;
    out.objective = g.cost;
    out.solution = std::move(sol);
    return out;
  }
  return out;
}

std::vector<std::string> verify_solution(const MimoInstance& inst, const MimoSolution& sol) {
  std::vector<std::string> v;
  if (sol.status != NfoldStatus::kOptimal) return v;
  if (sol.per_type.size() != inst.types.size()) {
    v.push_back("solution lists " + std::to_string(sol.per_type.size()) + " types, instance has " +
                std::to_string(inst.types.size()));
    return v;
  }
  std::vector<mpz_class> sum(inst.d);
  Rational objective;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const MimoType& tp = inst.types[i];
    mpz_class count = 0;
    for (const MimoElement& e : sol.per_type[i]) {
      if (e.count <= 0) v.push_back(type_name(i) + ": non-positive element count");
      if (e.x.size() != inst.d || e.aux.size() != tp.aux) {
        v.push_back(type_name(i) + ": element has the wrong dimension");
        continue;
      }
      count += e.count;
      for (std::size_t row = 0; row < tp.a.rows; ++row) {
        mpz_class lhs = 0;
        for (std::size_t j = 0; j < inst.d + tp.aux; ++j) {
          const std::int64_t val = j < inst.d ? e.x[j] : e.aux[j - inst.d];
          lhs += tp.a.at(row, j) * mpz_class(static_cast<long>(val));
        }
        if (lhs > static_cast<long>(tp.b[row])) {
          v.push_back(type_name(i) + ": element violates row " + std::to_string(row));
          break;
        }
      }
      for (std::size_t k = 0; k < inst.d; ++k) sum[k] += e.count * mpz_class(static_cast<long>(e.x[k]));
      objective.add_mul(Rational(e.count), element_cost(tp, inst.d, e.x, e.aux));
    }
    if (count != static_cast<long>(tp.multiplicity)) v.push_back(type_name(i) + ": element count differs from μ");
  }
  for (std::size_t k = 0; k < inst.d; ++k) {
    if (sum[k] != static_cast<long>(inst.target[k])) v.push_back("coordinate " + std::to_string(k) + " of the sum differs from n");
  }
  if (objective != sol.objective) v.push_back("reported objective " + sol.objective.str() + " differs from " + objective.str());
  return v;
}

}  // namespace hmo

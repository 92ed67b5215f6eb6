#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "hmo/errors.hpp"
#include "hmo/scheduling.hpp"

namespace hmo {
namespace {

using Kind = ObjectiveSpec::Kind;

Rational rat(std::int64_t v) { return Rational(static_cast<long long>(v)); }

std::string job_name(std::size_t j) { return "job type " + std::to_string(j + 1); }

std::int64_t to_small(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) throw CapacityError(std::string(what) + " exceeds 64 bits");
  return v.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance helpers

std::int64_t SchedulingInstance::job_count() const {
  std::int64_t n = 0;
  for (const JobType& j : jobs) n += j.count;
  return n;
}

std::int64_t SchedulingInstance::machine_count() const {
  std::int64_t n = 0;
  for (const MachineKind& k : kinds) {
    for (const SpeedClass& s : k.speeds) n += s.count;
  }
  return n;
}

void SchedulingInstance::validate() const {
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    for (const SpeedClass& s : kinds[i].speeds) {
      if (s.speed.sign() <= 0 || s.speed > Rational(1)) {
        throw InputError("machine kind " + std::to_string(i + 1) + ": speed must lie in (0, 1]");
      }
      if (s.count < 0) throw InputError("machine kind " + std::to_string(i + 1) + ": negative machine count");
    }
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const JobType& jt = jobs[j];
    if (jt.count < 0) throw InputError(job_name(j) + ": negative multiplicity");
    if (jt.weight < 0) throw InputError(job_name(j) + ": negative weight");
    if (jt.per_kind.size() != kinds.size()) throw InputError(job_name(j) + ": one entry per machine kind is required");
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const JobOnKind& on = jt.per_kind[i];
      if (on.release < 0) throw InputError(job_name(j) + ": negative release");
      if (!on.size) continue;
      if (*on.size < 1) throw InputError(job_name(j) + ": sizes must be at least 1");
      if (on.due && *on.due <= on.release) throw InputError(job_name(j) + ": due date must exceed the release");
    }
  }
}

std::vector<MachineType> machine_types(const SchedulingInstance& inst) {
  std::vector<MachineType> out;
  for (std::size_t i = 0; i < inst.kinds.size(); ++i) {
    for (std::size_t q = 0; q < inst.kinds[i].speeds.size(); ++q) {
      const SpeedClass& s = inst.kinds[i].speeds[q];
      out.push_back({i, q, s.speed, s.count});
    }
  }
  return out;
}

ObjectiveSpec ObjectiveSpec::parse(std::string_view text) {
  static const std::pair<const char*, Kind> names[] = {
      {"cmax", Kind::kCmax},   {"cmin", Kind::kCmin},   {"lmax", Kind::kLmax},
      {"fmax", Kind::kFmax},   {"sumwu", Kind::kSumWU}, {"sumwc", Kind::kSumWC},
      {"sumwf", Kind::kSumWF}, {"sumwt", Kind::kSumWT},
  };
  for (const auto& [name, kind] : names) {
    if (text == name) return {kind, 2};
  }
  if (text.substr(0, 3) == "lp:") {
    const std::string digits(text.substr(3));
    if (!digits.empty() && digits.size() < 4 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const unsigned p = static_cast<unsigned>(std::stoul(digits));
      if (p >= 2) return {Kind::kLp, p};
    }
    throw InputError("lp objective needs an integer exponent p ≥ 2, got '" + std::string(text) + "'");
  }
  throw InputError("unknown objective '" + std::string(text) + "'");
}

std::string ObjectiveSpec::str() const {
  switch (kind) {
    case Kind::kCmax: return "cmax";
    case Kind::kCmin: return "cmin";
    case Kind::kLmax: return "lmax";
    case Kind::kFmax: return "fmax";
    case Kind::kSumWU: return "sumwu";
    case Kind::kLp: return "lp:" + std::to_string(power);
    case Kind::kSumWC: return "sumwc";
    case Kind::kSumWF: return "sumwf";
    case Kind::kSumWT: return "sumwt";
  }
  return "?";
}

bool ObjectiveSpec::respects_due() const {
  return kind != Kind::kLmax && kind != Kind::kFmax && kind != Kind::kSumWT;
}

bool ObjectiveSpec::min_sum() const { return kind == Kind::kSumWC || kind == Kind::kSumWF || kind == Kind::kSumWT; }

// ---------------------------------------------------------------------------
// Machine view

std::int64_t MachineJobs::duration(std::size_t j) const { return (rat(size[j]) / speed).to_int64(); }

std::int64_t MachineJobs::horizon() const {
  std::int64_t r = 0, total = 0;
  for (std::size_t j = 0; j < d(); ++j) {
    if (!usable[j] || count[j] == 0) continue;
    r = std::max(r, release[j]);
    total += count[j] * duration(j);
  }
  return r + total;
}

std::int64_t MachineJobs::max_size() const {
  std::int64_t p = 1;
  for (std::size_t j = 0; j < d(); ++j) {
    if (usable[j] && count[j] > 0) p = std::max(p, size[j]);
  }
  return p;
}

std::int64_t time_scale(const SchedulingInstance& inst) {
  std::int64_t l = 1;
  for (const MachineKind& k : inst.kinds) {
    for (const SpeedClass& s : k.speeds) l = std::lcm(l, to_small(s.speed.numerator(), "speed numerator"));
  }
  return l;
}

MachineJobs machine_jobs(const SchedulingInstance& inst, const MachineType& mt, std::int64_t scale) {
  MachineJobs mj;
  mj.machine = mt;
  mj.time_scale = scale;
  mj.speed = mt.speed / rat(scale);
  std::optional<std::int64_t> anchor;
  for (const JobType& jt : inst.jobs) {
    if (jt.per_kind[mt.kind].size) {
      anchor = jt.per_kind[mt.kind].release * scale;
      break;
    }
  }
  for (const JobType& jt : inst.jobs) {
    const JobOnKind& on = jt.per_kind[mt.kind];
    mj.weight.push_back(jt.weight);
    mj.count.push_back(jt.count);
    if (on.size) {
      mj.size.push_back(*on.size);
      mj.release.push_back(on.release * scale);
      mj.due.push_back(on.due ? std::optional<std::int64_t>(*on.due * scale) : std::nullopt);
      mj.usable.push_back(true);
    } else {
      // Unit job with r = d at an existing release: no cycle admits it.
      mj.size.push_back(1);
      mj.release.push_back(anchor.value_or(0));
      mj.due.push_back(anchor.value_or(0));
      mj.usable.push_back(false);
    }
  }
  return mj;
}

// ---------------------------------------------------------------------------
// Objective scaling

mpz_class scale_objective_to_integral(std::vector<MimoType>& blocks) {
  mpz_class factor = 1;
  auto take = [&](const Rational& q) {
    const mpz_class den = q.denominator();
    mpz_lcm(factor.get_mpz_t(), factor.get_mpz_t(), den.get_mpz_t());
  };
  for (const MimoType& tp : blocks) {
    for (const MimoObjectiveTerm& term : tp.objective) {
      if (term.linear) take(*term.linear);
      if (term.table) {
        for (const Rational& q : *term.table) take(q);
      }
    }
  }
  if (factor == 1) return factor;
  const Rational f(factor);
  for (MimoType& tp : blocks) {
    for (MimoObjectiveTerm& term : tp.objective) {
      if (term.linear) *term.linear *= f;
      if (term.table) {
        for (Rational& q : *term.table) q *= f;
      }
    }
  }
  return factor;
}

// ---------------------------------------------------------------------------
// Validation

ScheduleReport validate_schedule(const SchedulingInstance& inst, const Schedule& schedule,
                                 const ObjectiveSpec& objective) {
  ScheduleReport rep;
  auto& v = rep.violations;
  const std::size_t d = inst.d();
  std::vector<mpz_class> placed(d);
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> used;
  std::int64_t listed = 0;
  bool any_job = false;
  Rational cmax, lmax, fmax, sum, min_load;
  bool min_load_set = false;
  for (std::size_t mi = 0; mi < schedule.machines.size(); ++mi) {
    const MachineSchedule& ms = schedule.machines[mi];
    const std::string where = "machine " + std::to_string(mi + 1);
    if (ms.kind >= inst.kinds.size() || ms.speed_class >= inst.kinds[ms.kind].speeds.size()) {
      v.push_back(where + ": unknown machine kind or speed class");
      continue;
    }
    if (ms.count < 1) {
      v.push_back(where + ": machine count must be positive");
      continue;
    }
    used[{ms.kind, ms.speed_class}] += ms.count;
    listed += ms.count;
    const Rational speed = inst.kinds[ms.kind].speeds[ms.speed_class].speed;
    std::vector<ScheduledJob> jobs = ms.jobs;
    std::stable_sort(jobs.begin(), jobs.end(), [](const ScheduledJob& a, const ScheduledJob& b) { return a.start < b.start; });
    Rational load, prev_end;
    bool first = true;
    for (const ScheduledJob& sj : jobs) {
      if (sj.job_type >= d) {
        v.push_back(where + ": unknown job type");
        continue;
      }
      const JobType& jt = inst.jobs[sj.job_type];
      const JobOnKind& on = jt.per_kind[ms.kind];
      const std::string what = where + ", " + job_name(sj.job_type);
      placed[sj.job_type] += ms.count;
      if (!on.size) {
        v.push_back(what + ": infinite size on this kind");
        continue;
      }
      if (sj.end - sj.start != rat(*on.size) / speed) v.push_back(what + ": duration differs from p/s");
      if (sj.start < rat(on.release)) v.push_back(what + ": starts before its release");
      if (objective.respects_due() && on.due && sj.end > rat(*on.due)) v.push_back(what + ": due violated");
      if (!first && sj.start < prev_end) v.push_back(where + ": overlapping jobs");
      prev_end = first ? sj.end : std::max(prev_end, sj.end);
      first = false;
      load += sj.end - sj.start;
      const Rational w = rat(jt.weight) * rat(ms.count);
      if (!any_job || sj.end > cmax) cmax = sj.end;
      const Rational flow = sj.end - rat(on.release);
      if (!any_job || flow > fmax) fmax = flow;
      if (on.due) {
        const Rational late = sj.end - rat(*on.due);
        if (!any_job || late > lmax) lmax = late;
        if (objective.kind == Kind::kSumWT && late.sign() > 0) sum.add_mul(w, late);
      } else if (objective.kind == Kind::kLmax) {
        v.push_back(what + ": L_max needs a due date");
      }
      if (objective.kind == Kind::kSumWC) sum.add_mul(w, sj.end);
      if (objective.kind == Kind::kSumWF) sum.add_mul(w, flow);
      any_job = true;
    }
    if (objective.kind == Kind::kLp) {
      Rational pw(1);
      for (unsigned e = 0; e < objective.power; ++e) pw *= load;
      sum.add_mul(rat(ms.count), pw);
    }
    if (!min_load_set || load < min_load) min_load = load;
    min_load_set = true;
  }
  for (const auto& [key, n] : used) {
    if (n > inst.kinds[key.first].speeds[key.second].count) {
      v.push_back("machine kind " + std::to_string(key.first + 1) + " speed class " + std::to_string(key.second + 1) +
                  ": more machines than available");
    }
  }
  if (!schedule.late.empty()) {
    if (objective.kind != Kind::kSumWU) v.push_back("late jobs are only allowed for sumwu");
    if (schedule.late.size() != d) v.push_back("late list has the wrong length");
  }
  for (std::size_t j = 0; j < d; ++j) {
    mpz_class total = placed[j];
    if (j < schedule.late.size()) {
      if (schedule.late[j] < 0) v.push_back(job_name(j) + ": negative late count");
      total += schedule.late[j];
      if (objective.kind == Kind::kSumWU) sum.add_mul(rat(inst.jobs[j].weight), rat(schedule.late[j]));
    }
    if (total != inst.jobs[j].count) {
      v.push_back(job_name(j) + ": scheduled " + total.get_str() + " jobs, instance has " +
                  std::to_string(inst.jobs[j].count));
    }
  }
  switch (objective.kind) {
    case Kind::kCmax: rep.value = any_job ? cmax : Rational(0); break;
    case Kind::kLmax: rep.value = any_job ? lmax : Rational(0); break;
    case Kind::kFmax: rep.value = any_job ? fmax : Rational(0); break;
    case Kind::kCmin: rep.value = listed < inst.machine_count() || !min_load_set ? Rational(0) : min_load; break;
    default: rep.value = sum; break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Solving

namespace {

using Adjust = std::function<void(MachineJobs&)>;

struct ProbeOutcome {
  bool feasible = false;
  Rational objective;
  Schedule schedule;
  std::vector<CycleModel> models;
  std::vector<SolvedBrick> bricks;
};

void fill_due(MachineJobs& mj) {
  const std::int64_t h = mj.horizon();
  for (auto& d : mj.due) {
    if (!d) d = h;
  }
}

std::vector<CycleModel> models_for(const SchedulingInstance& inst, const ObjectiveSpec& objective, const Adjust& adjust,
                                   const std::optional<std::int64_t>& min_load) {
  const std::int64_t scale = time_scale(inst);
  std::vector<CycleModel> out;
  for (const MachineType& mt : machine_types(inst)) {
    MachineJobs mj = machine_jobs(inst, mt, scale);
    adjust(mj);
    if (objective.min_sum()) {
      out.push_back(emit_minsum_polytope(mj, objective));
    } else {
      out.push_back(emit_cmax_polytope(mj, {objective, min_load}));
    }
  }
  return out;
}

ProbeOutcome run_probe(const SchedulingInstance& inst, const ObjectiveSpec& objective, std::vector<CycleModel> models,
                       const NfoldOptions& options, SchedulingStats& stats) {
  ++stats.probes;
  const std::size_t d = inst.d();
  MimoInstance mimo;
  mimo.d = d;
  for (const JobType& jt : inst.jobs) mimo.target.push_back(jt.count);
  for (const CycleModel& m : models) mimo.types.push_back(m.to_mimo(m.jobs.machine.count));
  if (objective.kind == Kind::kSumWU) {
    // Penalty machine collecting the late jobs at cost Σ w_j x_j.
    MimoType pen;
    std::vector<std::vector<long long>> rows;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<long long> up(d, 0), down(d, 0);
      up[j] = 1;
      down[j] = -1;
      rows.push_back(up);
      pen.b.push_back(inst.jobs[j].count);
      rows.push_back(down);
      pen.b.push_back(0);
      MimoObjectiveTerm term;
      term.coordinates = {j};
      term.linear = rat(inst.jobs[j].weight);
      pen.objective.push_back(term);
    }
    pen.a = IntegerMatrix::from_rows(rows, d);
    pen.multiplicity = 1;
    mimo.types.push_back(std::move(pen));
  }
  const mpz_class factor = scale_objective_to_integral(mimo.types);
  stats.objective_scale = factor.get_str();
  const MimoSolution sol = solve_mimo(mimo, options);
  stats.configurations += sol.stats.configurations;
  stats.nodes += sol.stats.nodes;
  stats.lp_solves += sol.stats.lp_solves;
  ProbeOutcome out;
  if (sol.status != NfoldStatus::kOptimal) return out;
  out.feasible = true;
  out.objective = sol.objective / Rational(factor);
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (const MimoElement& e : sol.per_type[i]) {
      Config values = e.x;
      values.insert(values.end(), e.aux.begin(), e.aux.end());
      MachineSchedule ms = reconstruct_schedule(models[i], values);
      const std::int64_t count = to_small(e.count, "machine count");
      out.bricks.push_back({i, std::move(values), count});
      if (ms.jobs.empty()) continue;
      ms.count = count;
      out.schedule.machines.push_back(std::move(ms));
    }
  }
  if (objective.kind == Kind::kSumWU) {
    out.schedule.late.assign(d, 0);
    for (const MimoElement& e : sol.per_type.back()) {
      for (std::size_t j = 0; j < d; ++j) out.schedule.late[j] += e.x[j] * to_small(e.count, "late count");
    }
  }
  out.models = std::move(models);
  return out;
}

std::int64_t max_horizon(const SchedulingInstance& inst) {
  const std::int64_t scale = time_scale(inst);
  std::int64_t h = 0;
  for (const MachineType& mt : machine_types(inst)) h = std::max(h, machine_jobs(inst, mt, scale).horizon());
  return h;
}

// Smallest v in [lo, hi] with probe(v) feasible, given monotonicity; nullopt
// when probe(hi) fails.
std::optional<std::int64_t> smallest_feasible(std::int64_t lo, std::int64_t hi,
                                              const std::function<ProbeOutcome(std::int64_t)>& probe,
                                              ProbeOutcome& best) {
  ProbeOutcome top = probe(hi);
  if (!top.feasible) return std::nullopt;
  best = std::move(top);
  std::int64_t good = hi;
  while (lo < good) {
    const std::int64_t mid = lo + (good - lo) / 2;
    ProbeOutcome o = probe(mid);
    if (o.feasible) {
      good = mid;
      best = std::move(o);
    } else {
      lo = mid + 1;
    }
  }
  return good;
}

SchedulingResult finish(const ProbeOutcome& o, Rational value, SchedulingStats stats) {
  SchedulingResult r;
  r.status = ScheduleStatus::kOptimal;
  r.value = std::move(value);
  r.schedule = o.schedule;
  r.models = o.models;
  r.bricks = o.bricks;
  r.stats = std::move(stats);
  return r;
}

SchedulingResult empty_result(const SchedulingInstance& inst, const ObjectiveSpec& objective) {
  SchedulingResult r;
  r.status = ScheduleStatus::kOptimal;
  if (objective.kind == Kind::kSumWU) r.schedule.late.assign(inst.d(), 0);
  return r;
}

}  // namespace

SchedulingResult solve_cmax(const SchedulingInstance& inst, const NfoldOptions& options) {
  inst.validate();
  const ObjectiveSpec obj{Kind::kCmax};
  if (inst.job_count() == 0) return empty_result(inst, obj);
  SchedulingStats stats;
  auto probe = [&](std::int64_t c) {
    auto models = models_for(
        inst, obj,
        [c](MachineJobs& mj) {
          fill_due(mj);
          for (auto& d : mj.due) d = std::min(*d, c);
        },
        std::nullopt);
    return run_probe(inst, obj, std::move(models), options, stats);
  };
  ProbeOutcome best;
  const auto c = smallest_feasible(1, max_horizon(inst), probe, best);
  if (!c) {
    SchedulingResult r;
    r.stats = stats;
    return r;
  }
  return finish(best, rat(*c) / rat(time_scale(inst)), stats);
}

SchedulingResult solve_max_objective(const SchedulingInstance& inst, Kind kind, const NfoldOptions& options) {
  inst.validate();
  if (kind != Kind::kLmax && kind != Kind::kFmax) throw InputError("solve_max_objective handles lmax and fmax");
  const ObjectiveSpec obj{kind};
  if (inst.job_count() == 0) return empty_result(inst, obj);
  const std::int64_t scale = time_scale(inst);
  std::int64_t max_due = 0, min_due = std::numeric_limits<std::int64_t>::max();
  for (std::size_t j = 0; j < inst.d(); ++j) {
    if (inst.jobs[j].count == 0) continue;
    for (const JobOnKind& on : inst.jobs[j].per_kind) {
      if (!on.size) continue;
      if (!on.due) {
        if (kind == Kind::kLmax) throw InputError(job_name(j) + ": L_max needs finite due dates");
        continue;
      }
      max_due = std::max(max_due, *on.due * scale);
      min_due = std::min(min_due, *on.due * scale);
    }
  }
  SchedulingStats stats;
  auto probe = [&](std::int64_t phi) {
    auto models = models_for(
        inst, obj,
        [phi, kind](MachineJobs& mj) {
          for (std::size_t j = 0; j < mj.d(); ++j) {
            if (!mj.usable[j]) continue;
            mj.due[j] = kind == Kind::kLmax ? *mj.due[j] + phi : mj.release[j] + phi;
          }
        },
        std::nullopt);
    return run_probe(inst, obj, std::move(models), options, stats);
  };
  const std::int64_t h = max_horizon(inst);
  std::int64_t lo = 1, hi = h;
  if (kind == Kind::kLmax) {
    if (min_due == std::numeric_limits<std::int64_t>::max()) min_due = 0;
    lo = 1 - max_due;
    hi = h - min_due;
  }
  ProbeOutcome best;
  const auto phi = smallest_feasible(lo, hi, probe, best);
  if (!phi) {
    SchedulingResult r;
    r.stats = stats;
    return r;
  }
  return finish(best, rat(*phi) / rat(scale), stats);
}

SchedulingResult solve_throughput(const SchedulingInstance& inst, const NfoldOptions& options) {
  inst.validate();
  const ObjectiveSpec obj{Kind::kSumWU};
  SchedulingStats stats;
  ProbeOutcome o = run_probe(inst, obj, models_for(inst, obj, fill_due, std::nullopt), options, stats);
  if (!o.feasible) throw std::logic_error("the penalty machine admits every assignment");
  return finish(o, o.objective, stats);
}

SchedulingResult solve_cmin(const SchedulingInstance& inst, const NfoldOptions& options) {
  inst.validate();
  const ObjectiveSpec obj{Kind::kCmin};
  const std::int64_t scale = time_scale(inst);
  SchedulingStats stats;
  auto probe = [&](std::int64_t c) {
    return run_probe(inst, obj, models_for(inst, obj, fill_due, c), options, stats);
  };
  ProbeOutcome best = probe(0);
  if (!best.feasible) {
    SchedulingResult r;
    r.stats = stats;
    return r;
  }
  // Largest load bound that stays feasible.
  std::int64_t lo = 0, hi = 0;
  for (const MachineType& mt : machine_types(inst)) {
    const MachineJobs mj = machine_jobs(inst, mt, scale);
    std::int64_t total = 0;
    for (std::size_t j = 0; j < mj.d(); ++j) total += mj.usable[j] ? mj.count[j] * mj.duration(j) : 0;
    hi = std::max(hi, total);
  }
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    ProbeOutcome o = probe(mid);
    if (o.feasible) {
      lo = mid;
      best = std::move(o);
    } else {
      hi = mid - 1;
    }
  }
  return finish(best, rat(lo) / rat(scale), stats);
}

SchedulingResult solve_lp_norm(const SchedulingInstance& inst, unsigned power, const NfoldOptions& options) {
  inst.validate();
  if (power < 2) throw InputError("lp objective needs p ≥ 2");
  const ObjectiveSpec obj{Kind::kLp, power};
  SchedulingStats stats;
  ProbeOutcome o = run_probe(inst, obj, models_for(inst, obj, fill_due, std::nullopt), options, stats);
  if (!o.feasible) {
    SchedulingResult r;
    r.stats = stats;
    return r;
  }
  return finish(o, o.objective, stats);
}

SchedulingResult solve_minsum(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                              const NfoldOptions& options) {
  inst.validate();
  if (!objective.min_sum()) throw InputError("solve_minsum handles sumwc, sumwf and sumwt");
  for (const MachineKind& k : inst.kinds) {
    for (const SpeedClass& s : k.speeds) {
      if (s.count > 0 && s.speed != Rational(1)) throw InputError(objective.str() + " requires unit speeds");
    }
  }
  SchedulingStats stats;
  const Adjust adjust = objective.kind == Kind::kSumWT ? Adjust([](MachineJobs&) {}) : Adjust(fill_due);
  ProbeOutcome o = run_probe(inst, objective, models_for(inst, objective, adjust, std::nullopt), options, stats);
  if (!o.feasible) {
    SchedulingResult r;
    r.stats = stats;
    return r;
  }
  return finish(o, o.objective, stats);
}

SchedulingResult solve_scheduling(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                                  const NfoldOptions& options) {
  switch (objective.kind) {
    case Kind::kCmax: return solve_cmax(inst, options);
    case Kind::kLmax:
    case Kind::kFmax: return solve_max_objective(inst, objective.kind, options);
    case Kind::kSumWU: return solve_throughput(inst, options);
    case Kind::kCmin: return solve_cmin(inst, options);
    case Kind::kLp: return solve_lp_norm(inst, objective.power, options);
    default: return solve_minsum(inst, objective, options);
  }
}

std::vector<CycleModel> build_models(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                                     std::int64_t probe) {
  inst.validate();
  switch (objective.kind) {
    case Kind::kCmax:
      return models_for(
          inst, objective,
          [probe](MachineJobs& mj) {
            fill_due(mj);
            for (auto& d : mj.due) d = std::min(*d, probe);
          },
          std::nullopt);
    case Kind::kLmax:
    case Kind::kFmax:
      return models_for(
          inst, objective,
          [probe, &objective](MachineJobs& mj) {
            fill_due(mj);
            for (std::size_t j = 0; j < mj.d(); ++j) {
              if (!mj.usable[j]) continue;
              mj.due[j] = objective.kind == Kind::kLmax ? *mj.due[j] + probe : mj.release[j] + probe;
            }
          },
          std::nullopt);
    case Kind::kCmin: return models_for(inst, objective, fill_due, probe);
    case Kind::kSumWT: return models_for(inst, objective, [](MachineJobs&) {}, std::nullopt);
    default: return models_for(inst, objective, fill_due, std::nullopt);
  }
}

}  // namespace hmo

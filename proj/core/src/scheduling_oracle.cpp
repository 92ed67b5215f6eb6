#include <algorithm>
#include <functional>
#include <map>

#include "hmo/errors.hpp"
#include "hmo/scheduling.hpp"

namespace hmo {
namespace {

using Kind = ObjectiveSpec::Kind;

struct Machine {
  std::size_t kind, speed_class;
  Rational speed;
};

// Best single-machine value for one job multiset; nullopt when no order is
// feasible. `empty` is set for machines without jobs.
struct MachineValue {
  bool feasible = false;
  bool empty = true;
  Rational value;
};

class BruteForce {
 public:
  BruteForce(const SchedulingInstance& inst, const ObjectiveSpec& objective) : inst_(inst), obj_(objective) {}

  MachineValue machine(const Machine& m, const std::vector<std::int64_t>& counts) {
    auto key = std::make_tuple(m.kind, m.speed_class, counts);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    MachineValue best = evaluate(m, counts);
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  MachineValue evaluate(const Machine& m, const std::vector<std::int64_t>& counts) {
    std::vector<std::size_t> seq;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] > 0 && !inst_.jobs[j].per_kind[m.kind].size) return {};
      seq.insert(seq.end(), static_cast<std::size_t>(counts[j]), j);
    }
    MachineValue best;
    if (seq.empty()) {
      best.feasible = true;
      return best;
    }
    best.empty = false;
    do {
      Rational t, value, load;
      bool ok = true, first = true;
      for (std::size_t j : seq) {
        const JobOnKind& on = inst_.jobs[j].per_kind[m.kind];
        const Rational dur = Rational(static_cast<long long>(*on.size)) / m.speed;
        const Rational r(static_cast<long long>(on.release));
        t = std::max(t, r) + dur;
        load += dur;
        const Rational w(static_cast<long long>(inst_.jobs[j].weight));
        if (obj_.respects_due() && on.due && t > Rational(static_cast<long long>(*on.due))) {
          ok = false;
          break;
        }
        Rational term;
        switch (obj_.kind) {
          case Kind::kCmax: term = t; break;
          case Kind::kLmax: term = t - Rational(static_cast<long long>(*on.due)); break;
          case Kind::kFmax: term = t - r; break;
          case Kind::kSumWC: value.add_mul(w, t); break;
          case Kind::kSumWF: value.add_mul(w, t - r); break;
          case Kind::kSumWT:
            if (on.due && t > Rational(static_cast<long long>(*on.due))) {
              value.add_mul(w, t - Rational(static_cast<long long>(*on.due)));
            }
            break;
          default: break;
        }
        if (obj_.kind == Kind::kCmax || obj_.kind == Kind::kLmax || obj_.kind == Kind::kFmax) {
          value = first ? term : std::max(value, term);
        }
        first = false;
      }
      if (!ok) continue;
      if (obj_.kind == Kind::kCmin) value = load;
      if (obj_.kind == Kind::kLp) {
        value = Rational(1);
        for (unsigned e = 0; e < obj_.power; ++e) value *= load;
      }
      if (obj_.kind == Kind::kSumWU) value = Rational(0);
      if (!best.feasible || value < best.value) best.value = value;
      best.feasible = true;
      // Load based objectives do not depend on the order.
      if (obj_.kind == Kind::kCmin || obj_.kind == Kind::kLp || obj_.kind == Kind::kSumWU) break;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return best;
  }

  const SchedulingInstance& inst_;
  ObjectiveSpec obj_;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::int64_t>>, MachineValue> memo_;
};

}  // namespace

std::optional<Rational> brute_force_schedule(const SchedulingInstance& inst, const ObjectiveSpec& objective) {
  inst.validate();
  if (inst.job_count() > 8) throw CapacityError("brute force handles at most 8 jobs");
  if (inst.machine_count() > 3) throw CapacityError("brute force handles at most 3 machines");
  if (objective.kind == Kind::kLmax) {
    for (const JobType& jt : inst.jobs) {
      for (const JobOnKind& on : jt.per_kind) {
        if (jt.count > 0 && on.size && !on.due) throw InputError("L_max needs finite due dates");
      }
    }
  }
  if (objective.min_sum()) {
    for (const MachineKind& k : inst.kinds) {
      for (const SpeedClass& s : k.speeds) {
        if (s.count > 0 && s.speed != Rational(1)) throw InputError(objective.str() + " requires unit speeds");
      }
    }
  }
  if (inst.job_count() == 0) return Rational(0);

  std::vector<Machine> machines;
  for (std::size_t i = 0; i < inst.kinds.size(); ++i) {
    for (std::size_t q = 0; q < inst.kinds[i].speeds.size(); ++q) {
      for (std::int64_t c = 0; c < inst.kinds[i].speeds[q].count; ++c) {
        machines.push_back({i, q, inst.kinds[i].speeds[q].speed});
      }
    }
  }
  const std::size_t d = inst.d();
  BruteForce bf(inst, objective);
  const bool with_late = objective.kind == Kind::kSumWU;
  std::optional<Rational> best;
  std::vector<MachineValue> chosen;

  auto combine = [&](const std::vector<std::int64_t>& late) {
    Rational total;
    bool any = false;
    for (const MachineValue& mv : chosen) {
      switch (objective.kind) {
        case Kind::kCmax:
        case Kind::kLmax:
        case Kind::kFmax:
          if (mv.empty) break;
          total = any ? std::max(total, mv.value) : mv.value;
          any = true;
          break;
        case Kind::kCmin:
          total = any ? std::min(total, mv.value) : mv.value;
          any = true;
          break;
        default: total += mv.value; break;
      }
    }
    if (with_late) {
      for (std::size_t j = 0; j < d; ++j) total.add_mul(Rational(static_cast<long long>(inst.jobs[j].weight)),
                                                        Rational(static_cast<long long>(late[j])));
    }
    const bool maximize = objective.kind == Kind::kCmin;
    if (!best || (maximize ? total > *best : total < *best)) best = total;
  };

  // Distributes the remaining counts over machines i.., the late bucket last.
  std::function<void(std::size_t, std::vector<std::int64_t>&)> assign = [&](std::size_t i,
                                                                            std::vector<std::int64_t>& rest) {
    if (i == machines.size()) {
      if (!with_late && std::any_of(rest.begin(), rest.end(), [](std::int64_t v) { return v > 0; })) return;
      combine(rest);
      return;
    }
    std::vector<std::int64_t> take(d, 0);
    for (;;) {
      const MachineValue mv = bf.machine(machines[i], take);
      if (mv.feasible) {
        for (std::size_t j = 0; j < d; ++j) rest[j] -= take[j];
        chosen.push_back(mv);
        assign(i + 1, rest);
        chosen.pop_back();
        for (std::size_t j = 0; j < d; ++j) rest[j] += take[j];
      }
      std::size_t j = 0;
      while (j < d && take[j] == rest[j]) take[j++] = 0;
      if (j == d) break;
      ++take[j];
    }
  };
  std::vector<std::int64_t> rest(d);
  for (std::size_t j = 0; j < d; ++j) rest[j] = inst.jobs[j].count;
  assign(0, rest);
  return best;
}

SchedulingInstance random_scheduling_instance(std::mt19937_64& rng, const CorpusParams& params) {
  auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  SchedulingInstance inst;
  const auto kinds = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(params.max_kinds)));
  for (std::size_t i = 0; i < kinds; ++i) {
    MachineKind k;
    const auto classes = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(params.max_speeds)));
    for (std::size_t q = 0; q < classes; ++q) {
      const Rational s = params.speed_set[static_cast<std::size_t>(
          pick(0, static_cast<std::int64_t>(params.speed_set.size()) - 1))];
      if (std::any_of(k.speeds.begin(), k.speeds.end(), [&](const SpeedClass& c) { return c.speed == s; })) continue;
      k.speeds.push_back({s, 0});
    }
    inst.kinds.push_back(k);
  }
  const std::int64_t m = pick(1, static_cast<std::int64_t>(params.max_machines));
  for (std::int64_t c = 0; c < m; ++c) {
    MachineKind& k = inst.kinds[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(kinds) - 1))];
    ++k.speeds[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(k.speeds.size()) - 1))].count;
  }
  const auto types = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(params.max_types)));
  std::int64_t budget = pick(1, params.max_jobs);
  for (std::size_t j = 0; j < types; ++j) {
    JobType jt;
    jt.count = j + 1 == types ? budget : pick(0, budget);
    budget -= jt.count;
    jt.weight = pick(1, 3);
    const auto finite = static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(kinds) - 1));
    for (std::size_t i = 0; i < kinds; ++i) {
      JobOnKind on;
      if (i == finite || pick(0, 7) > 0) on.size = pick(1, params.max_size);
      on.release = pick(0, params.max_time / 4);
      if (pick(1, 100) <= params.due_percent) on.due = pick(on.release + 1, params.max_time);
      jt.per_kind.push_back(on);
    }
    inst.jobs.push_back(jt);
  }
  return inst;
}

}  // namespace hmo

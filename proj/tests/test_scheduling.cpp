#include <map>
#include <random>

#include "doctest.h"
#include "hmo/errors.hpp"
#include "hmo/scheduling.hpp"

using hmo::Cycle;
using hmo::ObjectiveSpec;
using hmo::Rational;
using hmo::SchedulingInstance;
using Kind = hmo::ObjectiveSpec::Kind;

namespace {

struct J {
  std::int64_t p = 1;
  std::int64_t r = 0;
  std::optional<std::int64_t> d;
  std::int64_t w = 1;
  std::int64_t n = 1;
};

// `machines` identical machines of one kind and speed.
SchedulingInstance identical(std::int64_t machines, const std::vector<J>& jobs, Rational speed = Rational(1)) {
  SchedulingInstance inst;
  inst.kinds = {{{{speed, machines}}}};
  for (const J& j : jobs) inst.jobs.push_back({j.n, j.w, {{j.p, j.r, j.d}}});
  return inst;
}

hmo::MachineJobs single_view(const SchedulingInstance& inst) {
  return hmo::machine_jobs(inst, hmo::machine_types(inst).front(), hmo::time_scale(inst));
}

Rational solve_value(const SchedulingInstance& inst, const char* objective) {
  const auto res = hmo::solve_scheduling(inst, ObjectiveSpec::parse(objective));
  REQUIRE(res.status == hmo::ScheduleStatus::kOptimal);
  const auto rep = hmo::validate_schedule(inst, res.schedule, ObjectiveSpec::parse(objective));
  CHECK(rep.ok());
  CHECK(rep.value == res.value);
  return res.value;
}

std::size_t cycle_index(const hmo::CycleModel& m, const std::string& name) {
  for (std::size_t c = 0; c < m.cycles.size(); ++c) {
    if (m.cycles[c].name() == name) return c;
  }
  FAIL("no cycle " << name);
  return 0;
}

// Assembles the probe feasibility instance the same way the drivers do.
bool probe_feasible(const SchedulingInstance& inst, const std::vector<hmo::CycleModel>& models) {
  hmo::MimoInstance mimo;
  mimo.d = inst.d();
  for (const auto& jt : inst.jobs) mimo.target.push_back(jt.count);
  for (const auto& m : models) mimo.types.push_back(m.to_mimo(m.jobs.machine.count));
  return hmo::solve_mimo(mimo).status == hmo::NfoldStatus::kOptimal;
}

// Single machine of the brick's type carrying exactly the brick's jobs.
SchedulingInstance brick_instance(const SchedulingInstance& inst, const hmo::CycleModel& m, const hmo::Config& v) {
  SchedulingInstance sub = inst;
  for (std::size_t j = 0; j < sub.d(); ++j) sub.jobs[j].count = v[m.x[j]];
  for (auto& k : sub.kinds) {
    for (auto& s : k.speeds) s.count = 0;
  }
  sub.kinds[m.jobs.machine.kind].speeds[m.jobs.machine.speed_class].count = 1;
  return sub;
}

// Checks every solved brick: model rows hold, the reconstruction is valid on
// its own machine, carries exactly x, starts on the time grid and, for the
// ordered model, the model objective equals the schedule's.
void check_bricks(const SchedulingInstance& inst, const hmo::SchedulingResult& res, const ObjectiveSpec& obj) {
  const Rational scale(static_cast<long long>(hmo::time_scale(inst)));
  for (const hmo::SolvedBrick& b : res.bricks) {
    const hmo::CycleModel& m = res.models[b.model];
    REQUIRE(m.check(b.values).empty());
    hmo::MachineSchedule ms = hmo::reconstruct_schedule(m, b.values);
    std::vector<std::int64_t> placed(inst.d(), 0);
    for (const auto& sj : ms.jobs) {
      ++placed[sj.job_type];
      CHECK((sj.start * scale).is_integer());
    }
    for (std::size_t j = 0; j < inst.d(); ++j) CHECK(placed[j] == b.values[m.x[j]]);
    const SchedulingInstance sub = brick_instance(inst, m, b.values);
    hmo::Schedule one;
    one.machines = {ms};
    const auto rep = hmo::validate_schedule(sub, one, obj);
    INFO(m.dump());
    REQUIRE(rep.ok());
    if (obj.min_sum()) CHECK(m.evaluate(b.values) == rep.value);
  }
}

void oracle_sweep(const char* objective, hmo::CorpusParams params, int instances, std::uint64_t seed) {
  const ObjectiveSpec obj = ObjectiveSpec::parse(objective);
  std::mt19937_64 rng(seed);
  int feasible = 0;
  for (int it = 0; it < instances; ++it) {
    const SchedulingInstance inst = hmo::random_scheduling_instance(rng, params);
    const auto want = hmo::brute_force_schedule(inst, obj);
    const auto res = hmo::solve_scheduling(inst, obj);
    INFO(objective << " instance " << it);
    REQUIRE((res.status == hmo::ScheduleStatus::kOptimal) == want.has_value());
    if (!want) continue;
    ++feasible;
    CHECK(res.value == *want);
    const auto rep = hmo::validate_schedule(inst, res.schedule, obj);
    CHECK(rep.ok());
    CHECK(rep.value == res.value);
    check_bricks(inst, res, obj);
  }
  CHECK(feasible > instances / 2);
}

hmo::CorpusParams unit_params() {
  hmo::CorpusParams p;
  p.speed_set = {Rational(1)};
  p.max_machines = 2;
  p.max_jobs = 6;
  return p;
}

}  // namespace

TEST_CASE("critical times collect releases and due dates") {
  auto inst = identical(1, {{1, 0, 2}, {1, 0, 4}});
  CHECK(hmo::critical_times(single_view(inst), {Kind::kCmax}) == std::vector<std::int64_t>{0, 2, 4});
  inst = identical(1, {{2, 0, 9}, {3, 0, 9}});
  CHECK(hmo::critical_times(single_view(inst), {Kind::kCmax}) == std::vector<std::int64_t>{0, 9});
  inst = identical(1, {{3, 0}, {4, 0}});
  CHECK(hmo::critical_times(single_view(inst), {Kind::kSumWT}) == std::vector<std::int64_t>{0, 7});
}

TEST_CASE("potential cycles match the pair enumeration") {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto cycles = hmo::potential_cycles(n);
    std::size_t internal = 0, external = 0;
    for (const Cycle& c : cycles) (c.external ? external : internal)++;
    std::size_t pairs = 0;
    for (std::size_t a = 2; a <= n - 1; ++a) {
      for (std::size_t b = a; b <= n - 1; ++b) ++pairs;
    }
    CHECK(internal == n - 1);
    CHECK(external == pairs);
  }
  CHECK(hmo::potential_cycles(3)[1].name() == "ext2_2");
}

TEST_CASE("eligibility of a job for a cycle") {
  const auto inst = identical(1, {{2, 0, 4}, {1, 0, 2}});
  const auto view = single_view(inst);
  const std::vector<std::int64_t> t{0, 2, 4};
  const Cycle ext{true, 0, 2};
  CHECK(hmo::chi(view, t, 0, ext, {Kind::kCmax}));
  const auto unit = identical(1, {{1, 0, 4}, {1, 0, 2}});
  CHECK_FALSE(hmo::chi(single_view(unit), t, 0, ext, {Kind::kCmax}));
  // Second job is due at 2; the internal cycle [2, 4] lies after it.
  CHECK_FALSE(hmo::chi(view, t, 1, Cycle{false, 1, 2}, {Kind::kCmax}));
  CHECK(hmo::chi(view, t, 1, Cycle{false, 0, 1}, {Kind::kCmax}));
}

TEST_CASE("incompatible cycles") {
  const Cycle int1{false, 0, 1}, int2{false, 1, 2}, int3{false, 2, 3};
  const Cycle ext24{true, 0, 4}, ext23{true, 0, 3}, ext34{true, 1, 4};
  CHECK(hmo::incompatible(int3, ext24));
  CHECK(hmo::incompatible(ext24, int3));
  CHECK_FALSE(hmo::incompatible(int1, int2));
  CHECK(hmo::incompatible(ext23, ext34));
  CHECK_FALSE(hmo::incompatible(ext23, ext23));
}

TEST_CASE("smith order by weight over size") {
  const auto inst = identical(1, {{1, 0, 4, 1}, {2, 0, 4, 1}});
  const std::vector<std::int64_t> t{0, 4};
  CHECK(hmo::smith_order(single_view(inst), t, 0, {Kind::kSumWC}) == std::vector<std::size_t>{0, 1});
  const auto reversed = identical(1, {{2, 0, 4, 1}, {1, 0, 4, 1}});
  CHECK(hmo::smith_order(single_view(reversed), t, 0, {Kind::kSumWC}) == std::vector<std::size_t>{1, 0});
  const auto ties = identical(1, {{2, 0, 4, 2}, {1, 0, 4, 1}});
  CHECK(hmo::smith_order(single_view(ties), t, 0, {Kind::kSumWC}) == std::vector<std::size_t>{0, 1});
  // Before every due date all tardiness weights vanish.
  const auto late = identical(1, {{2, 0, 8, 1}, {1, 0, 8, 5}});
  CHECK(hmo::smith_order(single_view(late), {0, 4, 8}, 0, {Kind::kSumWT}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("makespan model of one job type over the horizon") {
  const auto inst = identical(1, {{2, 0, std::nullopt, 1, 3}});
  const auto models = hmo::build_models(inst, {Kind::kCmax}, 6);
  REQUIRE(models.size() == 1);
  const auto& m = models[0];
  CHECK(m.times == std::vector<std::int64_t>{0, 6});
  REQUIRE(m.rows.size() == 2);
  CHECK(m.rows[0].family == "assign");
  CHECK(m.rows[0].relation == hmo::Relation::kEq);
  CHECK(m.rows[0].coef.size() == 2);
  CHECK(m.rows[1].family == "volume");
  CHECK(m.rows[1].coef == std::vector<std::pair<std::size_t, std::int64_t>>{{m.y[0][0], 2}});
  CHECK(m.rows[1].rhs == 6);
  CHECK(m.max_coefficient() == 2);

  const auto slow = identical(1, {{1, 0, 4}}, Rational(1, 3));
  const auto sm = hmo::build_models(slow, {Kind::kCmax}, 100)[0];
  CHECK(sm.rows.back().family == "volume");
  CHECK(sm.rows.back().rhs == 1);
}

TEST_CASE("reconstruction of the two-cycle example") {
  // A second type released at 2 creates the critical time 2; it stays unused.
  const auto inst = identical(1, {{2, 0, 4}, {2, 2, 4}});
  const auto m = hmo::emit_cmax_polytope(single_view(inst), {{Kind::kCmax}, std::nullopt});
  REQUIRE(m.times == std::vector<std::int64_t>{0, 2, 4});
  for (const char* name : {"ext2_2", "int1"}) {
    hmo::Config v(m.num_vars(), 0);
    const std::size_t c = cycle_index(m, name);
    v[m.x[0]] = 1;
    v[m.y[0][c]] = 1;
    if (m.z[c] != hmo::CycleModel::kNone) v[m.z[c]] = 1;
    REQUIRE(m.check(v).empty());
    const auto ms = hmo::reconstruct_schedule(m, v);
    REQUIRE(ms.jobs.size() == 1);
    CHECK(ms.jobs[0].start == Rational(0));
    CHECK(ms.jobs[0].end == Rational(2));
  }
  CHECK(hmo::reconstruct_schedule(m, hmo::Config(m.num_vars(), 0)).jobs.empty());
}

TEST_CASE("makespan examples") {
  CHECK(solve_value(identical(2, {{1, 0, std::nullopt, 1, 2}, {2}}), "cmax") == Rational(2));
  CHECK(solve_value(identical(1, {{3}}, Rational(1, 2)), "cmax") == Rational(6));
  CHECK(hmo::brute_force_schedule(identical(2, {{1, 0, std::nullopt, 1, 2}, {2}}), {Kind::kCmax}) == Rational(2));
  CHECK(hmo::brute_force_schedule(identical(2, {}), {Kind::kCmax}) == Rational(0));
  CHECK(hmo::solve_cmax(identical(2, {})).value == Rational(0));

  // Fastest eligible machine wins for a single job.
  SchedulingInstance two;
  two.kinds = {{{{Rational(1, 2), 1}, {Rational(1), 1}}}};
  two.jobs = {{1, 1, {{3, 0, std::nullopt}}}};
  CHECK(hmo::brute_force_schedule(two, {Kind::kCmax}) == Rational(3));
  CHECK(solve_value(two, "cmax") == Rational(3));

  // A job with no finite size anywhere cannot be scheduled.
  SchedulingInstance none;
  none.kinds = {{{{Rational(1), 1}}}};
  none.jobs = {{1, 1, {{std::nullopt, 0, std::nullopt}}}};
  CHECK(hmo::solve_cmax(none).status == hmo::ScheduleStatus::kInfeasible);
  CHECK_FALSE(hmo::brute_force_schedule(none, {Kind::kCmax}).has_value());
}

TEST_CASE("lateness, flow time and throughput examples") {
  CHECK(solve_value(identical(1, {{2, 0, 1}}), "lmax") == Rational(1));
  CHECK(solve_value(identical(1, {{2, 0, 50}, {1, 0, 60}}), "lmax") <= Rational(0));
  CHECK(solve_value(identical(1, {{1, 0, std::nullopt, 1, 2}}), "fmax") == Rational(2));
  CHECK_THROWS_AS(hmo::solve_max_objective(identical(1, {{1}}), Kind::kLmax), hmo::InputError);

  CHECK(solve_value(identical(1, {{2, 0, 2, 1}, {2, 0, 2, 5}}), "sumwu") == Rational(1));
  CHECK(solve_value(identical(1, {{2, 0, 4, 1}, {2, 0, 4, 5}}), "sumwu") == Rational(0));
  CHECK(solve_value(identical(0, {{2, 0, 4, 3, 2}, {2, 0, 4, 5}}), "sumwu") == Rational(11));
}

TEST_CASE("load objective examples") {
  const auto split = identical(2, {{2}, {1, 0, std::nullopt, 1, 2}});
  CHECK(solve_value(split, "cmin") == Rational(2));
  CHECK(solve_value(identical(5, {{1, 0, std::nullopt, 1, 3}}), "cmin") == Rational(0));
  CHECK(solve_value(identical(1, {{2, 0, std::nullopt, 1, 2}, {3}}), "cmin") == Rational(7));
  CHECK(solve_value(split, "lp:2") == Rational(8));
  CHECK(solve_value(identical(1, {{2}, {3}}), "lp:2") == Rational(25));
  CHECK(solve_value(identical(1, {{1}}, Rational(1, 2)), "lp:2") == Rational(4));
  CHECK(solve_value(identical(2, {{2}, {1, 0, std::nullopt, 1, 2}}), "lp:3") == Rational(16));
}

TEST_CASE("weighted completion time examples") {
  const auto two = identical(1, {{1}, {2}});
  CHECK(solve_value(two, "sumwc") == Rational(4));
  CHECK(hmo::brute_force_schedule(two, {Kind::kSumWC}) == Rational(4));
  // Flow time differs from completion time by Σ w_j r_j when every job runs.
  const auto released = identical(2, {{2, 1, std::nullopt, 2}, {1, 3, std::nullopt, 1, 2}, {3, 0, std::nullopt, 3}});
  CHECK(solve_value(released, "sumwf") == solve_value(released, "sumwc") - Rational(2 * 1 + 1 * 3 * 2));
  CHECK(solve_value(identical(1, {{2, 0, 2}, {2, 0, 2, 3}}), "sumwt") == Rational(2));
  CHECK_THROWS_AS(hmo::solve_minsum(identical(1, {{1}}, Rational(1, 2)), {Kind::kSumWC}), hmo::InputError);
}

TEST_CASE("objective scaling multiplies by the lcm of denominators") {
  auto block = [](std::vector<Rational> coefs) {
    hmo::MimoType tp;
    for (std::size_t j = 0; j < coefs.size(); ++j) {
      hmo::MimoObjectiveTerm term;
      term.coordinates = {j};
      term.linear = coefs[j];
      tp.objective.push_back(term);
    }
    return tp;
  };
  std::vector<hmo::MimoType> blocks{block({Rational(1, 2)}), block({Rational(1, 3)})};
  CHECK(hmo::scale_objective_to_integral(blocks) == 6);
  CHECK(*blocks[0].objective[0].linear == Rational(3));
  CHECK(*blocks[1].objective[0].linear == Rational(2));
  std::vector<hmo::MimoType> unit{block({Rational(1), Rational(4)})};
  CHECK(hmo::scale_objective_to_integral(unit) == 1);
  // (v / s)² for s = 1/2 is already integral.
  const auto slow = identical(1, {{1}}, Rational(1, 2));
  std::vector<hmo::MimoType> lp{hmo::build_models(slow, {Kind::kLp, 2}, 0)[0].to_mimo(1)};
  CHECK(hmo::scale_objective_to_integral(lp) == 1);
}

TEST_CASE("validator flags infeasible schedules and computes values") {
  const auto inst = identical(1, {{2, 0, 1}});
  hmo::Schedule s;
  s.machines = {{0, 0, 1, {{0, Rational(0), Rational(2)}}}};
  const auto rep = hmo::validate_schedule(inst, s, {Kind::kCmax});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("due violated") != std::string::npos);
  CHECK(hmo::validate_schedule(inst, s, {Kind::kLmax}).ok());

  const auto pair = identical(1, {{2, 0}, {2, 0}});
  s.machines = {{0, 0, 1, {{0, Rational(0), Rational(2)}, {1, Rational(1), Rational(3)}}}};
  const auto overlap = hmo::validate_schedule(pair, s, {Kind::kCmax});
  REQUIRE_FALSE(overlap.ok());
  CHECK(overlap.violations[0].find("overlap") != std::string::npos);

  const auto seq = identical(1, {{1}, {2}});
  s.machines = {{0, 0, 1, {{0, Rational(0), Rational(1)}, {1, Rational(1), Rational(3)}}}};
  const auto ok = hmo::validate_schedule(seq, s, {Kind::kSumWC});
  CHECK(ok.ok());
  CHECK(ok.value == Rational(4));

  s.machines[0].jobs.pop_back();
  CHECK_FALSE(hmo::validate_schedule(seq, s, {Kind::kSumWC}).ok());
  s.machines[0].jobs = {{0, Rational(0), Rational(2)}, {1, Rational(2), Rational(4)}};
  CHECK_FALSE(hmo::validate_schedule(seq, s, {Kind::kSumWC}).ok());
}

TEST_CASE("objective names round trip") {
  for (const char* name : {"cmax", "cmin", "lmax", "fmax", "sumwu", "lp:2", "lp:5", "sumwc", "sumwf", "sumwt"}) {
    CHECK(ObjectiveSpec::parse(name).str() == name);
  }
  CHECK_THROWS_AS(ObjectiveSpec::parse("lp:1"), hmo::InputError);
  CHECK_THROWS_AS(ObjectiveSpec::parse("makespan"), hmo::InputError);
}

TEST_CASE("instance validation") {
  auto inst = identical(1, {{1, 0, 0}});
  CHECK_THROWS_AS(inst.validate(), hmo::InputError);
  inst = identical(1, {{0}});
  CHECK_THROWS_AS(inst.validate(), hmo::InputError);
  inst = identical(1, {{1}}, Rational(3, 2));
  CHECK_THROWS_AS(inst.validate(), hmo::InputError);
  inst = identical(1, {{1}});
  inst.jobs[0].per_kind.push_back({});
  CHECK_THROWS_AS(inst.validate(), hmo::InputError);
  CHECK_THROWS_AS(hmo::brute_force_schedule(identical(4, {{1}}), {Kind::kCmax}), hmo::CapacityError);
  CHECK_THROWS_AS(hmo::brute_force_schedule(identical(1, {{1, 0, std::nullopt, 1, 9}}), {Kind::kCmax}),
                  hmo::CapacityError);
}

TEST_CASE("solvers match the brute-force oracle on random instances") {
  SUBCASE("makespan with speeds") { oracle_sweep("cmax", {}, 60, 101); }
  SUBCASE("lateness") {
    auto p = unit_params();
    p.due_percent = 100;
    oracle_sweep("lmax", p, 40, 102);
  }
  SUBCASE("flow time") { oracle_sweep("fmax", unit_params(), 40, 103); }
  SUBCASE("throughput") { oracle_sweep("sumwu", unit_params(), 40, 104); }
  SUBCASE("min load") { oracle_sweep("cmin", unit_params(), 40, 105); }
  SUBCASE("power sum") { oracle_sweep("lp:2", unit_params(), 40, 106); }
  SUBCASE("power sum with speeds") { oracle_sweep("lp:3", {}, 30, 107); }
  SUBCASE("weighted completion") { oracle_sweep("sumwc", unit_params(), 40, 108); }
  SUBCASE("weighted flow") { oracle_sweep("sumwf", unit_params(), 40, 109); }
  SUBCASE("weighted tardiness") { oracle_sweep("sumwt", unit_params(), 40, 110); }
}

TEST_CASE("makespan feasibility is monotone in the probe") {
  std::mt19937_64 rng(211);
  for (int it = 0; it < 25; ++it) {
    const auto inst = hmo::random_scheduling_instance(rng, {});
    bool seen = false;
    for (std::int64_t c = 1; c <= 24; ++c) {
      const bool ok = probe_feasible(inst, hmo::build_models(inst, {Kind::kCmax}, c));
      CHECK_FALSE((seen && !ok));
      seen = seen || ok;
    }
  }
}

TEST_CASE("model sizes stay within the counted bounds") {
  // Makespan rows, equalities twice: assignment 2d, external-cycle 2E and
  // conflict E with E ≤ (2d−1)(d−1) external cycles, volume ≤ d(2d−1) pairs
  // of the ≤ 2d critical times, plus at most two load rows. That is at most
  // 8d² − 8d + 5 ≤ 8d².
  constexpr std::size_t kCmaxRows = 8;
  // Ordered model: additionally the split triple 6E, product rows
  // 2E(p_max − 1) plus 2E, aggregation 2(|T| − 1)(d + 1), with |T| ≤ 2d + 1.
  // Summing with E ≤ 2d² gives ≤ (24 + 4 p_max) d² + 8d + 1 ≤ 37 d² p_max.
  constexpr std::size_t kMinsumRows = 37;
  std::mt19937_64 rng(307);
  int tight = 0;
  for (int it = 0; it < 150; ++it) {
    hmo::CorpusParams p;
    p.max_types = 4;
    p.max_size = 6;
    const auto inst = hmo::random_scheduling_instance(rng, p);
    const std::size_t d = inst.d();
    for (const char* name : {"cmax", "cmin", "lp:2", "lmax", "fmax"}) {
      const ObjectiveSpec obj = ObjectiveSpec::parse(name);
      if (obj.kind == Kind::kLmax) continue;
      for (const auto& m : hmo::build_models(inst, obj, 12)) {
        CHECK(m.times.size() <= 2 * d);
        CHECK(m.constraint_rows() <= kCmaxRows * d * d);
        const std::int64_t pmax = m.jobs.max_size();
        CHECK(m.max_coefficient() <= pmax);
        bool largest_eligible = false;
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t c = 0; c < m.cycles.size(); ++c) {
            largest_eligible = largest_eligible || (m.chi[j][c] && m.jobs.size[j] == pmax);
          }
        }
        if (largest_eligible) {
          CHECK(m.max_coefficient() == pmax);
          ++tight;
        }
      }
    }
    auto unit = inst;
    for (auto& k : unit.kinds) {
      for (auto& s : k.speeds) s.speed = Rational(1);
    }
    for (const char* name : {"sumwc", "sumwt"}) {
      for (const auto& m : hmo::build_models(unit, ObjectiveSpec::parse(name), 0)) {
        const auto pmax = static_cast<std::size_t>(m.jobs.max_size());
        CHECK(m.times.size() <= 2 * d + 1);
        CHECK(m.constraint_rows() <= kMinsumRows * d * d * pmax);
        CHECK(m.max_coefficient() <= static_cast<std::int64_t>(std::max<std::size_t>(pmax, d)));
      }
    }
  }
  CHECK(tight > 100);
}

TEST_CASE("model dumps are deterministic") {
  std::mt19937_64 a(5), b(5);
  for (int it = 0; it < 10; ++it) {
    const auto ia = hmo::random_scheduling_instance(a, {});
    const auto ib = hmo::random_scheduling_instance(b, {});
    const auto ma = hmo::build_models(ia, {Kind::kCmax}, 10);
    const auto mb = hmo::build_models(ib, {Kind::kCmax}, 10);
    REQUIRE(ma.size() == mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i) CHECK(ma[i].dump() == mb[i].dump());
  }
}

#include <benchmark/benchmark.h>

#include <random>

#include "hmo/applications.hpp"
#include "hmo/lattice.hpp"
#include "hmo/lp.hpp"
#include "hmo/nfold.hpp"
#include "hmo/scheduling.hpp"

namespace {

using hmo::Rational;

std::vector<hmo::SchedulingInstance> corpus(hmo::CorpusParams params, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<hmo::SchedulingInstance> out;
  for (int i = 0; i < count; ++i) out.push_back(hmo::random_scheduling_instance(rng, params));
  return out;
}

hmo::CorpusParams unit_params() {
  hmo::CorpusParams p;
  p.speed_set = {Rational(1)};
  p.max_machines = 2;
  p.max_jobs = 6;
  return p;
}

void BM_SolveLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coef(-5, 5);
  hmo::LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) lp.add_variable(Rational(coef(rng)), Rational(0), Rational(10));
  for (std::size_t i = 0; i < n; ++i) {
    hmo::RationalVector row(n);
    for (auto& a : row) a = Rational(coef(rng));
    lp.add_row(row, hmo::Relation::kLe, Rational(20));
  }
  for (auto _ : state) benchmark::DoNotOptimize(hmo::solve_lp(lp));
}
BENCHMARK(BM_SolveLp)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

// One brick (x₁, x₂, s) with x₁ + x₂ + s = 1 and multiplicity μ; the huge
// route's cost should not grow with μ.
void BM_HugeNfold(benchmark::State& state) {
  const std::int64_t mu = state.range(0);
  hmo::BrickType b;
  b.e1 = hmo::IntegerMatrix::from_rows({{1, 0, 0}, {0, 1, 0}});
  b.e2 = hmo::IntegerMatrix::from_rows({{1, 1, 1}});
  b.rhs = {1};
  b.lower = {0, 0, 0};
  b.upper = {1, 1, 1};
  b.objective.linear = {Rational(1), Rational(2), Rational(0)};
  hmo::HugeNfoldInstance inst;
  inst.types = {b};
  inst.multiplicity = {mu};
  inst.b0 = {2 * mu / 5, mu / 3};
  hmo::NfoldOptions opt;
  opt.mode = hmo::SolveMode::kHuge;
  for (auto _ : state) benchmark::DoNotOptimize(hmo::reduce_and_solve(inst, opt));
}
BENCHMARK(BM_HugeNfold)->RangeMultiplier(1000)->Range(1000, 1000000000000LL);

void BM_GraverAll2x3(benchmark::State& state) {
  for (auto _ : state) {
    for (int code = 0; code < 729; ++code) {
      std::vector<std::vector<long long>> rows(2, std::vector<long long>(3));
      int c = code;
      for (int k = 0; k < 6; ++k, c /= 3) rows[k / 3][k % 3] = c % 3 - 1;
      const auto a = hmo::IntegerMatrix::from_rows(rows);
      benchmark::DoNotOptimize(hmo::graver_basis(a, hmo::graver_norm_bound(a)));
    }
  }
}
BENCHMARK(BM_GraverAll2x3)->Unit(benchmark::kMillisecond);

void BM_Scheduling(benchmark::State& state, const char* objective, bool unit) {
  const auto obj = hmo::ObjectiveSpec::parse(objective);
  hmo::CorpusParams params = unit ? unit_params() : hmo::CorpusParams{};
  if (obj.kind == hmo::ObjectiveSpec::Kind::kLmax) params.due_percent = 100;
  const auto instances = corpus(params, 17, 50);
  for (auto _ : state) {
    for (const auto& inst : instances) benchmark::DoNotOptimize(hmo::solve_scheduling(inst, obj));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(instances.size()));
}
BENCHMARK_CAPTURE(BM_Scheduling, cmax, "cmax", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheduling, lmax, "lmax", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheduling, sumwc, "sumwc", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheduling, sumwt, "sumwt", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheduling, l2, "lp:2", true)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto instances = corpus(hmo::CorpusParams{}, 17, 50);
  for (auto _ : state) {
    for (const auto& inst : instances) benchmark::DoNotOptimize(hmo::brute_force_schedule(inst, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(instances.size()));
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

// Bin packing with three item sizes and n = 3·arg items.
void BM_BinPacking(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const std::vector<std::int64_t> sizes{7, 5, 3}, counts{n, n, n};
  for (auto _ : state) benchmark::DoNotOptimize(hmo::binpacking_min_bins(sizes, counts, 17));
}
BENCHMARK(BM_BinPacking)->Arg(10)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <chrono>
#include <random>
#include <set>

#include "doctest.h"
#include "hmo/errors.hpp"
#include "hmo/mimo.hpp"
#include "hmo/nfold.hpp"
#include "nfold_oracles.hpp"

using hmo::BrickType;
using hmo::Config;
using hmo::HugeNfoldInstance;
using hmo::IntegerMatrix;
using hmo::Rational;

namespace {

// One coordinate c ∈ [lo, hi], E1 = (1), no local rows.
BrickType interval_brick(std::int64_t lo, std::int64_t hi) {
  BrickType b;
  b.e1 = IntegerMatrix::from_rows({{1}});
  b.e2 = IntegerMatrix(0, 1);
  b.lower = {lo};
  b.upper = {hi};
  return b;
}

HugeNfoldInstance random_instance(std::mt19937_64& rng, bool tables) {
  HugeNfoldInstance inst;
  const std::size_t r = 1 + rng() % 2, tau = 1 + rng() % 2;
  const std::size_t t = 2 + rng() % 2, s = rng() % 2;
  for (std::size_t i = 0; i < tau; ++i) {
    inst.types.push_back(oracle::random_brick(rng, r, s, t, tables));
    inst.multiplicity.push_back(static_cast<std::int64_t>(rng() % 4));
  }
  inst.b0.assign(r, 0);
  // Usually feasible: b⁰ is the image sum of random brick points.
  for (std::size_t i = 0; i < tau; ++i) {
    const auto pts = oracle::brick_points(inst.types[i]);
    for (std::int64_t q = 0; q < inst.multiplicity[i]; ++q) {
      const auto im = oracle::image(inst.types[i], pts[rng() % pts.size()]);
      for (std::size_t k = 0; k < r; ++k) inst.b0[k] += im[k];
    }
  }
  if (rng() % 8 == 0) inst.b0[0] += 7;
  return inst;
}

}  // namespace

TEST_CASE("configurations come out in lexicographic order and match a box scan") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    BrickType b = oracle::random_brick(rng, 1, rng() % 3, 2 + rng() % 2, it % 2 == 0);
    auto got = hmo::enumerate_configurations(b, 100000);
    REQUIRE(got == oracle::brick_points(b));
  }
  BrickType wide = interval_brick(0, 10);
  CHECK(hmo::enumerate_configurations(wide, 11).size() == 11);
  CHECK_THROWS_AS(hmo::enumerate_configurations(wide, 10), hmo::CapacityError);
}

TEST_CASE("linking enumeration keeps one cheapest configuration per image") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 150; ++it) {
    BrickType b = oracle::random_brick(rng, 1 + rng() % 2, rng() % 3, 2 + rng() % 2, it % 2 == 1);
    std::map<Config, Rational> best;
    for (const Config& c : oracle::brick_points(b)) {
      const Config im = oracle::image(b, c);
      const Rational v = oracle::brick_cost(b, c);
      auto f = best.find(im);
      if (f == best.end() || v < f->second) best[im] = v;
    }
    auto got = hmo::enumerate_linking_configurations(b, 100000);
    REQUIRE(got.configs.size() == best.size());
    auto it_best = best.begin();
    for (std::size_t k = 0; k < got.configs.size(); ++k, ++it_best) {
      REQUIRE(b.contains(got.configs[k]));
      REQUIRE(oracle::image(b, got.configs[k]) == it_best->first);
      REQUIRE(got.costs[k] == it_best->second);
      REQUIRE(oracle::brick_cost(b, got.configs[k]) == got.costs[k]);
    }
  }
}

TEST_CASE("pricing returns the lexicographically smallest violated configuration") {
  BrickType b = interval_brick(0, 2);
  CHECK_FALSE(hmo::price_type(b, {Rational(0)}, Rational(0)).has_value());

  b.objective.tables = {hmo::RationalVector{Rational(0), Rational(1), Rational(4)}};
  // f(c) − 3c over {0,1,2} is 0, −2, −2.
  auto p = hmo::price_type(b, {Rational(3)}, Rational(0));
  REQUIRE(p.has_value());
  CHECK(p->config == Config{1});
  CHECK(p->value == Rational(-2));
  CHECK(p->reduced_cost == Rational(-2));
  CHECK_FALSE(hmo::price_type(b, {Rational(3)}, Rational(-2)).has_value());

  // Two-dimensional tie: min −c₀−c₁ over c₀+c₁ = 2 is attained at (0,2),(1,1),(2,0).
  BrickType tie;
  tie.e1 = IntegerMatrix::from_rows({{1, 1}});
  tie.e2 = IntegerMatrix::from_rows({{1, 1}});
  tie.rhs = {2};
  tie.lower = {0, 0};
  tie.upper = {2, 2};
  p = hmo::price_type(tie, {Rational(1)}, Rational(0));
  REQUIRE(p.has_value());
  CHECK(p->config == Config{0, 2});
}

TEST_CASE("configuration LP reference example and invariants") {
  HugeNfoldInstance inst;
  inst.types.push_back(interval_brick(0, 2));
  inst.types[0].objective.tables = {hmo::RationalVector{Rational(0), Rational(1), Rational(4)}};
  inst.multiplicity = {2};
  inst.b0 = {3};
  auto lp = hmo::solve_conf_lp(inst);
  REQUIRE(lp.feasible);
  CHECK(lp.objective == Rational(5));
  CHECK(lp.support() <= 2);

  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int it = 0; it < 80; ++it) {
    HugeNfoldInstance ri = random_instance(rng, it % 2 == 0);
    auto conf = hmo::solve_conf_lp(ri);
    auto opt = oracle::nfold_optimum(ri);
    if (!opt) {
      auto sol = hmo::reduce_and_solve(ri);
      REQUIRE(sol.status == hmo::NfoldStatus::kInfeasible);
      continue;
    }
    ++feasible;
    REQUIRE(conf.feasible);
    REQUIRE(conf.support() <= ri.r() + ri.tau());
    REQUIRE(conf.objective <= *opt);
    for (std::size_t c = 0; c < conf.columns.size(); ++c) {
      REQUIRE(ri.types[conf.columns[c].type].contains(conf.columns[c].config));
      REQUIRE(conf.y[c].sign() >= 0);
    }
  }
  CHECK(feasible > 40);
}

TEST_CASE("phi splits values into integral and fractional bricks") {
  std::vector<hmo::ConfLpColumn> cols = {{0, {0, 2}, Rational(0)}, {0, {2, 0}, Rational(0)}};
  auto res = hmo::phi(cols, {Rational(1, 2), Rational(3, 2)}, {2});
  REQUIRE(res.integral.size() == 1);
  CHECK(res.integral[0].config == Config{2, 0});
  CHECK(res.integral[0].count == 1);
  REQUIRE(res.fractional.size() == 1);
  CHECK(res.fractional[0].count == 1);
  CHECK(res.fractional[0].brick == hmo::RationalVector{Rational(1), Rational(1)});
  CHECK(res.fractional_count() == 1);
  CHECK_THROWS_AS(hmo::phi(cols, {Rational(1, 2), Rational(1, 2)}, {2}), hmo::InputError);
}

TEST_CASE("proximity bound") {
  CHECK(hmo::proximity_bound(1, 1, 2, 1, 1, 1) == 3328);
  // t·normE2 = 4: exact log₂ = 2.
  const mpz_class k4 = mpz_class(2) * 26 * 256 * 4;
  CHECK(hmo::proximity_bound(1, 1, 4, 1, 1, 1) == 2 * k4);
  // t·normE2 = 3: ⌈k log₂ 3⌉ is the bit length of 3^k.
  for (std::uint64_t t : {3u, 5u, 6u}) {
    const mpz_class k = mpz_class(2) * 26 * static_cast<unsigned long>(t * t * t * t) * 4;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), t, k.get_ui());
    CHECK(hmo::proximity_bound(1, 1, t, 1, 1, 1) == mpz_class(static_cast<unsigned long>(mpz_sizeinbase(pw.get_mpz_t(), 2))));
  }
  CHECK_THROWS_AS(hmo::proximity_bound(0, 1, 1, 1, 1, 1), hmo::InputError);
  CHECK(hmo::proximity_bound(3, 4, 9, 5, 7, 11) > 0);
}

TEST_CASE("direct and huge modes agree with the dynamic-programming optimum") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 60; ++it) {
    HugeNfoldInstance inst = random_instance(rng, it % 3 == 0);
    auto opt = oracle::nfold_optimum(inst);
    hmo::NfoldOptions direct, huge;
    direct.mode = hmo::SolveMode::kDirect;
    huge.mode = hmo::SolveMode::kHuge;
    auto a = hmo::reduce_and_solve(inst, direct);
    auto b = hmo::reduce_and_solve(inst, huge);
    REQUIRE((a.status == hmo::NfoldStatus::kOptimal) == opt.has_value());
    REQUIRE((b.status == hmo::NfoldStatus::kOptimal) == opt.has_value());
    if (!opt) continue;
    REQUIRE(a.objective == *opt);
    REQUIRE(b.objective == *opt);
    REQUIRE(hmo::check_nfold_solution(inst, a).empty());
    REQUIRE(hmo::check_nfold_solution(inst, b).empty());
  }
}

TEST_CASE("huge multiplicities are reduced by proximity") {
  HugeNfoldInstance inst;
  inst.types.push_back(interval_brick(0, 1));
  inst.types[0].objective.linear = {Rational(1)};
  inst.multiplicity = {1000000};
  inst.b0 = {600000};
  for (auto mode : {hmo::SolveMode::kDirect, hmo::SolveMode::kHuge}) {
    hmo::NfoldOptions opt;
    opt.mode = mode;
    const auto start = std::chrono::steady_clock::now();
    auto sol = hmo::reduce_and_solve(inst, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 5.0);
    REQUIRE(sol.status == hmo::NfoldStatus::kOptimal);
    CHECK(sol.objective == Rational(600000));
    REQUIRE(sol.bricks.size() == 2);
    CHECK(sol.bricks[0].config == Config{0});
    CHECK(sol.bricks[0].count == 400000);
    CHECK(sol.bricks[1].count == 600000);
    if (mode == hmo::SolveMode::kHuge) {
      REQUIRE(sol.stats.proximity.has_value());
      CHECK(*sol.stats.reduced_bricks < 1000000);
    }
  }
}

TEST_CASE("mimo reduction shape and projections") {
  hmo::MimoInstance m;
  m.d = 2;
  hmo::MimoType tp;
  tp.aux = 1;
  // x₀ + x₁ + x′ ≤ 3 and x₀ − x₁ − x′ ≤ 1, plus nonnegativity as singleton rows.
  tp.a = IntegerMatrix::from_rows({{1, 1, 1}, {1, -1, -1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  tp.b = {3, 1, 0, 0, 0};
  tp.multiplicity = 2;
  m.types.push_back(tp);
  m.target = {2, 1};
  hmo::ReductionReport rep;
  auto nf = hmo::mimo_to_nfold(m, &rep);
  CHECK(rep.r == 2);
  CHECK(rep.t == 5);
  CHECK(rep.s == 2);
  CHECK(rep.s_lemma == 10);
  CHECK(nf.b0 == Config{2, 1});
  // Brick projections onto x are exactly the x-parts of the polytope's points.
  std::set<Config> want, got;
  for (long long a = 0; a <= 3; ++a) {
    for (long long b = 0; b <= 3; ++b) {
      for (long long c = 0; c <= 3; ++c) {
        if (a + b + c <= 3 && a - b - c <= 1) want.insert({a, b});
      }
    }
  }
  for (const Config& c : hmo::enumerate_configurations(nf.types[0], 1000)) got.insert({c[0], c[1]});
  CHECK(got == want);

  hmo::MimoType unbounded;
  unbounded.aux = 0;
  unbounded.a = IntegerMatrix::from_rows({{1, -1}});
  unbounded.b = {0};
  unbounded.multiplicity = 1;
  m.types = {unbounded};
  CHECK_THROWS_AS(hmo::mimo_to_nfold(m), hmo::InputError);
}

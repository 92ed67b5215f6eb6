#include <algorithm>
#include <functional>
#include <limits>
#include <random>

#include "doctest.h"
#include "hmo/applications.hpp"
#include "hmo/errors.hpp"

using hmo::Rational;

namespace {

using Vec = std::vector<std::int64_t>;

Vec expand(const Vec& sizes, const Vec& counts) {
  Vec items;
  for (std::size_t j = 0; j < sizes.size(); ++j) items.insert(items.end(), static_cast<std::size_t>(counts[j]), sizes[j]);
  std::sort(items.rbegin(), items.rend());
  return items;
}

// Places items (largest first) into bins with the given capacities and item
// limit by exhaustive search.
bool packs(const Vec& items, Vec room, std::int64_t limit) {
  Vec used(room.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == items.size()) return true;
    for (std::size_t b = 0; b < room.size(); ++b) {
      if (room[b] < items[i] || used[b] == limit) continue;
      room[b] -= items[i];
      ++used[b];
      const bool ok = go(i + 1);
      room[b] += items[i];
      --used[b];
      if (ok) return true;
    }
    return false;
  };
  return go(0);
}

std::int64_t min_bins_oracle(const Vec& sizes, const Vec& counts, std::int64_t cap, std::int64_t limit) {
  const Vec items = expand(sizes, counts);
  for (std::int64_t b = 0;; ++b) {
    if (packs(items, Vec(static_cast<std::size_t>(b), cap), limit)) return b;
  }
}

// Cheapest roll-usage vector under which the items can be cut.
std::optional<Rational> cutting_oracle(const Vec& sizes, const Vec& counts, const std::vector<hmo::RollType>& rolls) {
  const Vec items = expand(sizes, counts);
  const auto n = static_cast<std::int64_t>(items.size());
  std::optional<Rational> best;
  Vec use(rolls.size(), 0);
  for (;;) {
    Vec room;
    Rational cost;
    for (std::size_t i = 0; i < rolls.size(); ++i) {
      room.insert(room.end(), static_cast<std::size_t>(use[i]), rolls[i].length);
      cost += rolls[i].cost * Rational(static_cast<long long>(use[i]));
    }
    if ((!best || cost < *best) && packs(items, room, std::numeric_limits<std::int64_t>::max())) best = cost;
    std::size_t i = 0;
    while (i < use.size() && use[i] == n) use[i++] = 0;
    if (i == use.size()) break;
    ++use[i];
  }
  return best;
}

// Exhaustive surfing optimum over every surfer's split of its demand.
std::optional<std::int64_t> surfing_enumeration(const hmo::SurfingInstance& inst) {
  std::vector<const hmo::SurferType*> surfers;
  for (const auto& st : inst.surfers) {
    for (std::int64_t c = 0; c < st.count; ++c) surfers.push_back(&st);
  }
  auto supply = inst.supply;
  std::optional<std::int64_t> best;
  std::function<void(std::size_t, std::int64_t)> go;
  // Fills x[j][k] for one surfer, commodity by commodity.
  std::function<void(std::size_t, std::size_t, std::size_t, std::int64_t, Vec&, std::int64_t)> fill =
      [&](std::size_t u, std::size_t j, std::size_t k, std::int64_t left, Vec& load, std::int64_t cost) {
        const auto& st = *surfers[u];
        if (j == inst.commodities) {
          go(u + 1, cost);
          return;
        }
        if (k + 1 == inst.servers) {
          if (left > supply[k][j] || load[k] + left > st.capacity[k]) return;
          supply[k][j] -= left;
          load[k] += left;
          const std::int64_t next = j + 1 < inst.commodities ? st.demand[j + 1] : 0;
          fill(u, j + 1, 0, next, load, cost + left * st.cost[j][k]);
          load[k] -= left;
          supply[k][j] += left;
          return;
        }
        for (std::int64_t a = 0; a <= left; ++a) {
          if (a > supply[k][j] || load[k] + a > st.capacity[k]) break;
          supply[k][j] -= a;
          load[k] += a;
          fill(u, j, k + 1, left - a, load, cost + a * st.cost[j][k]);
          load[k] -= a;
          supply[k][j] += a;
        }
      };
  go = [&](std::size_t u, std::int64_t cost) {
    if (u == surfers.size()) {
      if (!best || cost < *best) best = cost;
      return;
    }
    Vec load(inst.servers, 0);
    fill(u, 0, 0, inst.commodities ? surfers[u]->demand[0] : 0, load, cost);
  };
  go(0, 0);
  return best;
}

// Min-cost flow for one commodity: source → server (supply) → surfer
// (capacity, cost) → sink (demand). Successive shortest paths.
std::optional<std::int64_t> surfing_flow(const hmo::SurfingInstance& inst) {
  struct Edge {
    std::size_t to;
    std::int64_t cap, cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;
  auto node = [&]() {
    out.emplace_back();
    return out.size() - 1;
  };
  auto add = [&](std::size_t a, std::size_t b, std::int64_t cap, std::int64_t cost) {
    out[a].push_back(edges.size());
    edges.push_back({b, cap, cost});
    out[b].push_back(edges.size());
    edges.push_back({a, 0, -cost});
  };
  const std::size_t src = node(), sink = node();
  std::vector<std::size_t> server(inst.servers);
  for (std::size_t k = 0; k < inst.servers; ++k) {
    server[k] = node();
    add(src, server[k], inst.supply[k][0], 0);
  }
  std::int64_t need = 0;
  for (const auto& st : inst.surfers) {
    for (std::int64_t c = 0; c < st.count; ++c) {
      const std::size_t u = node();
      for (std::size_t k = 0; k < inst.servers; ++k) add(server[k], u, st.capacity[k], st.cost[0][k]);
      add(u, sink, st.demand[0], 0);
      need += st.demand[0];
    }
  }
  std::int64_t flow = 0, cost = 0;
  while (flow < need) {
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dist(out.size(), inf);
    std::vector<std::size_t> via(out.size(), edges.size());
    dist[src] = 0;
    for (std::size_t round = 0; round < out.size(); ++round) {
      for (std::size_t a = 0; a < out.size(); ++a) {
        if (dist[a] == inf) continue;
        for (std::size_t e : out[a]) {
          if (edges[e].cap > 0 && dist[a] + edges[e].cost < dist[edges[e].to]) {
            dist[edges[e].to] = dist[a] + edges[e].cost;
            via[edges[e].to] = e;
          }
        }
      }
    }
    if (dist[sink] == inf) return std::nullopt;
    std::int64_t push = need - flow;
    for (std::size_t v = sink; v != src; v = edges[via[v] ^ 1].to) push = std::min(push, edges[via[v]].cap);
    for (std::size_t v = sink; v != src; v = edges[via[v] ^ 1].to) {
      edges[via[v]].cap -= push;
      edges[via[v] ^ 1].cap += push;
    }
    flow += push;
    cost += push * dist[sink];
  }
  return cost;
}

hmo::SurfingInstance random_surfing(std::mt19937_64& rng, std::size_t commodities) {
  hmo::SurfingInstance inst;
  inst.commodities = commodities;
  inst.servers = 1 + rng() % 2;
  for (std::size_t k = 0; k < inst.servers; ++k) {
    Vec s(commodities);
    for (auto& v : s) v = static_cast<std::int64_t>(rng() % 6);
    inst.supply.push_back(s);
  }
  const std::size_t tau = 1 + rng() % 2;
  std::int64_t budget = 4;
  for (std::size_t i = 0; i < tau; ++i) {
    hmo::SurferType st;
    st.count = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(budget + 1));
    budget -= st.count;
    for (std::size_t j = 0; j < commodities; ++j) st.demand.push_back(static_cast<std::int64_t>(rng() % 3));
    for (std::size_t k = 0; k < inst.servers; ++k) st.capacity.push_back(static_cast<std::int64_t>(rng() % 4));
    st.cost.assign(commodities, Vec(inst.servers));
    for (auto& row : st.cost) {
      for (auto& c : row) c = static_cast<std::int64_t>(rng() % 5);
    }
    inst.surfers.push_back(st);
  }
  return inst;
}

void check_surfing_solution(const hmo::SurfingInstance& inst, const hmo::SurfingResult& res) {
  std::vector<Vec> used(inst.servers, Vec(inst.commodities, 0));
  Vec per_type(inst.surfers.size(), 0);
  Rational cost;
  for (const auto& a : res.assignments) {
    const auto& st = inst.surfers[a.type];
    per_type[a.type] += a.count;
    for (std::size_t j = 0; j < inst.commodities; ++j) {
      std::int64_t got = 0;
      for (std::size_t k = 0; k < inst.servers; ++k) {
        got += a.amount[j][k];
        used[k][j] += a.count * a.amount[j][k];
        cost += Rational(static_cast<long long>(a.count * a.amount[j][k] * st.cost[j][k]));
      }
      CHECK(got == st.demand[j]);
    }
    for (std::size_t k = 0; k < inst.servers; ++k) {
      std::int64_t load = 0;
      for (std::size_t j = 0; j < inst.commodities; ++j) load += a.amount[j][k];
      CHECK(load <= st.capacity[k]);
    }
  }
  for (std::size_t i = 0; i < inst.surfers.size(); ++i) CHECK(per_type[i] == inst.surfers[i].count);
  for (std::size_t k = 0; k < inst.servers; ++k) {
    for (std::size_t j = 0; j < inst.commodities; ++j) CHECK(used[k][j] <= inst.supply[k][j]);
  }
  CHECK(cost == res.cost);
}

void check_packing(const Vec& sizes, const Vec& counts, const std::vector<hmo::PackedBin>& bins,
                   const std::function<std::int64_t(std::size_t)>& capacity, std::int64_t limit) {
  Vec total(sizes.size(), 0);
  for (const auto& b : bins) {
    std::int64_t load = 0, items = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      total[j] += b.count * b.items[j];
      load += b.items[j] * sizes[j];
      items += b.items[j];
    }
    CHECK(load <= capacity(b.type));
    CHECK(items <= limit);
  }
  CHECK(total == counts);
}

}  // namespace

TEST_CASE("knapsack feasibility examples") {
  hmo::KnapsackInstance k;
  k.items = {{{2}, 2}, {{1}, 2}};
  k.knapsacks = {{{3}, 2}};
  const auto packing = hmo::solve_knapsack(k);
  REQUIRE(packing.has_value());
  check_packing({2, 1}, {2, 2}, *packing, [](std::size_t) { return 3; }, 99);
  const auto m = hmo::knapsack_to_mimo(k);
  CHECK(m.types.size() == 1);
  CHECK(m.types[0].aux == 0);
  CHECK(m.types[0].objective.empty());
  CHECK(m.target == Vec{2, 2});

  k.items.push_back({{4}, 1});
  CHECK_FALSE(hmo::solve_knapsack(k).has_value());

  hmo::KnapsackInstance empty;
  empty.items = {{{2}, 0}};
  empty.knapsacks = {{{1}, 3}};
  const auto none = hmo::solve_knapsack(empty);
  REQUIRE(none.has_value());
  CHECK(none->empty());

  hmo::KnapsackInstance bad = k;
  bad.items[0].size = {1, 1};
  CHECK_THROWS_AS(hmo::knapsack_to_mimo(bad), hmo::InputError);
}

TEST_CASE("two-dimensional knapsack against exhaustive packing") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 40; ++it) {
    hmo::KnapsackInstance k;
    k.dims = 2;
    const std::size_t d = 1 + rng() % 3;
    std::int64_t n = 0;
    for (std::size_t j = 0; j < d; ++j) {
      hmo::ItemType item{{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 3)},
                         static_cast<std::int64_t>(rng() % 3)};
      n += item.count;
      k.items.push_back(item);
    }
    k.knapsacks = {{{4, 3}, static_cast<std::int64_t>(rng() % 4)}};
    // Exhaustive: try every assignment of the n ≤ 6 items to the bins.
    std::vector<std::size_t> seq;
    for (std::size_t j = 0; j < d; ++j) seq.insert(seq.end(), static_cast<std::size_t>(k.items[j].count), j);
    const auto bins = static_cast<std::size_t>(k.knapsacks[0].count);
    bool want = false;
    std::vector<Vec> room(bins, Vec{4, 3});
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (want) return;
      if (i == seq.size()) {
        want = true;
        return;
      }
      for (auto& r : room) {
        const auto& s = k.items[seq[i]].size;
        if (r[0] < s[0] || r[1] < s[1]) continue;
        r[0] -= s[0];
        r[1] -= s[1];
        go(i + 1);
        r[0] += s[0];
        r[1] += s[1];
      }
    };
    go(0);
    INFO("instance " << it << " n=" << n);
    const auto got = hmo::solve_knapsack(k);
    REQUIRE(got.has_value() == want);
    if (!got) continue;
    std::int64_t used = 0;
    Vec total(d, 0);
    for (const auto& b : *got) {
      used += b.count;
      std::int64_t load0 = 0, load1 = 0;
      for (std::size_t j = 0; j < d; ++j) {
        total[j] += b.count * b.items[j];
        load0 += b.items[j] * k.items[j].size[0];
        load1 += b.items[j] * k.items[j].size[1];
      }
      CHECK(load0 <= 4);
      CHECK(load1 <= 3);
    }
    CHECK(used <= k.knapsacks[0].count);
    for (std::size_t j = 0; j < d; ++j) CHECK(total[j] == k.items[j].count);
  }
}

TEST_CASE("bin packing examples") {
  auto r = hmo::binpacking_min_bins({2, 1}, {2, 2}, 3);
  CHECK(r.bins == 2);
  check_packing({2, 1}, {2, 2}, r.packing, [](std::size_t) { return 3; }, 99);
  CHECK(hmo::binpacking_min_bins({3}, {4}, 3).bins == 4);
  CHECK(hmo::binpacking_min_bins({}, {}, 3).bins == 0);
  CHECK_THROWS_AS(hmo::binpacking_min_bins({4}, {1}, 3), hmo::InputError);

  CHECK(hmo::binpacking_min_bins({1, 2}, {2, 1}, 10, 1).bins == 3);
  CHECK(hmo::binpacking_min_bins({1, 2}, {2, 1}, 10, 5).bins == 1);
  CHECK(hmo::binpacking_min_bins({1}, {3}, 3, 2).bins == 2);
  const auto card = hmo::cardinality_bp_to_mimo({1}, {3}, 3, 2, 2);
  CHECK(card.types[0].a.at(1, 0) == 1);
  CHECK(card.types[0].b[1] == 2);
}

TEST_CASE("bin packing matches exhaustive search and the volume bound") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 60; ++it) {
    const std::size_t d = 1 + rng() % 3;
    const std::int64_t cap = 3 + static_cast<std::int64_t>(rng() % 5);
    Vec sizes(d), counts(d);
    std::int64_t n = 0, volume = 0;
    for (std::size_t j = 0; j < d; ++j) {
      sizes[j] = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(cap));
      counts[j] = static_cast<std::int64_t>(rng() % 3);
      n += counts[j];
      volume += sizes[j] * counts[j];
    }
    const std::int64_t limit = it % 2 ? 1 + static_cast<std::int64_t>(rng() % 3) : n + 1;
    const auto opt = it % 2 ? std::optional<std::int64_t>(limit) : std::nullopt;
    const auto r = hmo::binpacking_min_bins(sizes, counts, cap, opt);
    INFO("instance " << it);
    CHECK(r.bins == min_bins_oracle(sizes, counts, cap, limit));
    CHECK(r.bins * cap >= volume);
    std::int64_t used = 0;
    for (const auto& b : r.packing) used += b.count;
    CHECK(used <= r.bins);
    check_packing(sizes, counts, r.packing, [cap](std::size_t) { return cap; }, limit);
    // One more bin never hurts.
    hmo::KnapsackInstance k;
    for (std::size_t j = 0; j < d; ++j) k.items.push_back({{sizes[j]}, counts[j]});
    for (std::int64_t b = r.bins; b <= r.bins + 2 && !opt; ++b) {
      k.knapsacks = {{{cap}, b}};
      CHECK(hmo::solve_knapsack(k).has_value());
    }
  }
}

TEST_CASE("cutting stock examples") {
  auto r = hmo::solve_cutting_stock({2, 1}, {1, 1}, {{3, Rational(1)}});
  REQUIRE(r.status == hmo::NfoldStatus::kOptimal);
  CHECK(r.cost == Rational(1));
  CHECK(r.rolls_used == Vec{1});

  // Three items of size 2: small rolls hold one, the large roll holds all.
  r = hmo::solve_cutting_stock({2}, {3}, {{2, Rational(1)}, {6, Rational(5, 2)}});
  REQUIRE(r.status == hmo::NfoldStatus::kOptimal);
  CHECK(r.cost == Rational(5, 2));
  CHECK(r.rolls_used == Vec{0, 1});
  r = hmo::solve_cutting_stock({2}, {3}, {{2, Rational(1)}, {6, Rational(4)}});
  CHECK(r.cost == Rational(3));
  CHECK(r.rolls_used == Vec{3, 0});

  r = hmo::solve_cutting_stock({2}, {0}, {{3, Rational(1)}});
  CHECK(r.status == hmo::NfoldStatus::kOptimal);
  CHECK(r.cost == Rational(0));
  CHECK(hmo::solve_cutting_stock({5}, {1}, {{3, Rational(1)}}).status == hmo::NfoldStatus::kInfeasible);
}

TEST_CASE("cutting stock matches enumeration of roll usage") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 30; ++it) {
    const std::size_t d = 1 + rng() % 2;
    Vec sizes(d), counts(d);
    std::int64_t n = 0;
    for (std::size_t j = 0; j < d; ++j) {
      sizes[j] = 1 + static_cast<std::int64_t>(rng() % 4);
      counts[j] = static_cast<std::int64_t>(rng() % 3);
      n += counts[j];
    }
    if (n > 4) counts[0] = 0;
    std::vector<hmo::RollType> rolls;
    const std::size_t tau = 1 + rng() % 3;
    for (std::size_t i = 0; i < tau; ++i) {
      rolls.push_back({2 + static_cast<std::int64_t>(rng() % 5), Rational(static_cast<long long>(1 + rng() % 6),
                                                                          static_cast<long long>(1 + rng() % 2))});
    }
    const auto want = cutting_oracle(sizes, counts, rolls);
    const auto got = hmo::solve_cutting_stock(sizes, counts, rolls);
    INFO("instance " << it);
    REQUIRE((got.status == hmo::NfoldStatus::kOptimal) == want.has_value());
    if (!want) continue;
    CHECK(got.cost == *want);
    Rational paid;
    for (std::size_t i = 0; i < tau; ++i) paid += rolls[i].cost * Rational(static_cast<long long>(got.rolls_used[i]));
    CHECK(paid == got.cost);
    check_packing(sizes, counts, got.patterns, [&](std::size_t i) { return rolls[i].length; }, 99);
  }
}

TEST_CASE("surfing examples") {
  hmo::SurfingInstance one;
  one.commodities = one.servers = 1;
  one.supply = {{1}};
  one.surfers = {{1, {1}, {1}, {{1}}}};
  auto r = hmo::solve_surfing(one);
  REQUIRE(r.status == hmo::NfoldStatus::kOptimal);
  CHECK(r.cost == Rational(1));
  check_surfing_solution(one, r);

  hmo::SurfingInstance two;
  two.commodities = 1;
  two.servers = 2;
  two.supply = {{5}, {5}};
  two.surfers = {{2, {2}, {9, 9}, {{1, 3}}}};
  r = hmo::solve_surfing(two);
  REQUIRE(r.status == hmo::NfoldStatus::kOptimal);
  CHECK(r.cost == Rational(4));
  for (const auto& a : r.assignments) CHECK(a.amount[0] == Vec{2, 0});

  two.surfers[0].demand = {0};
  CHECK(hmo::solve_surfing(two).cost == Rational(0));

  two.surfers[0].demand = {6};
  r = hmo::solve_surfing(two);
  CHECK(r.status == hmo::NfoldStatus::kInfeasible);
  CHECK(r.demand_exceeds_supply);

  const auto m = hmo::surfing_to_mimo(one);
  REQUIRE(m.types.size() == 2);
  CHECK(m.types[1].multiplicity == 1);
  CHECK(m.types[1].objective.empty());
}

TEST_CASE("surfing matches min-cost flow and enumeration") {
  std::mt19937_64 rng(53);
  int feasible = 0;
  for (int it = 0; it < 60; ++it) {
    const std::size_t commodities = it < 30 ? 1 : 1 + rng() % 2;
    const auto inst = random_surfing(rng, commodities);
    const auto want = surfing_enumeration(inst);
    if (commodities == 1) REQUIRE(surfing_flow(inst) == want);
    const auto got = hmo::solve_surfing(inst);
    INFO("instance " << it);
    REQUIRE((got.status == hmo::NfoldStatus::kOptimal) == want.has_value());
    if (!want) continue;
    ++feasible;
    CHECK(got.cost == Rational(static_cast<long long>(*want)));
    check_surfing_solution(inst, got);
  }
  CHECK(feasible > 15);
}

#include "hmo/applications.hpp"

#include <algorithm>
#include <numeric>

#include "hmo/errors.hpp"

namespace hmo {
namespace {

std::int64_t to_small(const mpz_class& v) {
  if (!v.fits_slong_p()) throw CapacityError("count exceeds 64 bits");
  return v.get_si();
}

// Rows Σ_j a_{r,j} x_j ≤ b_r followed by 0 ≤ x_j ≤ upper_j.
MimoType boxed_type(const std::vector<std::vector<long long>>& rows, const Config& rhs, const Config& upper,
                    std::int64_t multiplicity) {
  const std::size_t d = upper.size();
  std::vector<std::vector<long long>> all = rows;
  MimoType tp;
  tp.b = rhs;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<long long> up(d, 0), down(d, 0);
    up[j] = 1;
    down[j] = -1;
    all.push_back(up);
    tp.b.push_back(upper[j]);
    all.push_back(down);
    tp.b.push_back(0);
  }
  tp.a = IntegerMatrix::from_rows(all, d);
  tp.multiplicity = multiplicity;
  return tp;
}

std::vector<PackedBin> used_bins(const MimoSolution& sol) {
  std::vector<PackedBin> out;
  for (std::size_t i = 0; i < sol.per_type.size(); ++i) {
    for (const MimoElement& e : sol.per_type[i]) {
      if (std::all_of(e.x.begin(), e.x.end(), [](std::int64_t v) { return v == 0; })) continue;
      out.push_back({i, e.x, to_small(e.count)});
    }
  }
  return out;
}

void check_counts(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts) {
  if (sizes.size() != counts.size()) throw InputError("sizes and counts differ in length");
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (sizes[j] < 0 || counts[j] < 0) throw InputError("item " + std::to_string(j + 1) + ": negative data");
  }
}

KnapsackInstance one_dimensional(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                 std::int64_t capacity, std::optional<std::int64_t> limit, std::int64_t bins) {
  KnapsackInstance k;
  k.dims = limit ? 2 : 1;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    ItemType it{{sizes[j]}, counts[j]};
    if (limit) it.size.push_back(1);
    k.items.push_back(it);
  }
  KnapsackType bin{{capacity}, bins};
  if (limit) bin.capacity.push_back(*limit);
  k.knapsacks = {bin};
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// Packing

void KnapsackInstance::validate() const {
  for (std::size_t j = 0; j < items.size(); ++j) {
    const std::string what = "item type " + std::to_string(j + 1);
    if (items[j].size.size() != dims) throw InputError(what + ": size has the wrong dimension");
    if (items[j].count < 0) throw InputError(what + ": negative multiplicity");
    for (std::int64_t s : items[j].size) {
      if (s < 0) throw InputError(what + ": negative size");
    }
  }
  for (std::size_t i = 0; i < knapsacks.size(); ++i) {
    const std::string what = "knapsack type " + std::to_string(i + 1);
    if (knapsacks[i].capacity.size() != dims) throw InputError(what + ": capacity has the wrong dimension");
    if (knapsacks[i].count < 0) throw InputError(what + ": negative multiplicity");
    for (std::int64_t b : knapsacks[i].capacity) {
      if (b < 0) throw InputError(what + ": negative capacity");
    }
  }
}

MimoInstance knapsack_to_mimo(const KnapsackInstance& inst) {
  inst.validate();
  const std::size_t d = inst.items.size();
  MimoInstance m;
  m.d = d;
  Config upper;
  for (const ItemType& it : inst.items) {
    m.target.push_back(it.count);
    upper.push_back(it.count);
  }
  for (const KnapsackType& k : inst.knapsacks) {
    std::vector<std::vector<long long>> rows;
    Config rhs;
    for (std::size_t delta = 0; delta < inst.dims; ++delta) {
      std::vector<long long> row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = inst.items[j].size[delta];
      rows.push_back(row);
      rhs.push_back(k.capacity[delta]);
    }
    m.types.push_back(boxed_type(rows, rhs, upper, k.count));
  }
  return m;
}

std::optional<std::vector<PackedBin>> solve_knapsack(const KnapsackInstance& inst, const NfoldOptions& options) {
  const MimoInstance m = knapsack_to_mimo(inst);
  if (m.types.empty()) {
    const bool empty = std::all_of(m.target.begin(), m.target.end(), [](std::int64_t v) { return v == 0; });
    return empty ? std::optional<std::vector<PackedBin>>(std::vector<PackedBin>{}) : std::nullopt;
  }
  const MimoSolution sol = solve_mimo(m, options);
  if (sol.status != NfoldStatus::kOptimal) return std::nullopt;
  return used_bins(sol);
}

MimoInstance cardinality_bp_to_mimo(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                    std::int64_t capacity, std::int64_t limit, std::int64_t bins) {
  check_counts(sizes, counts);
  return knapsack_to_mimo(one_dimensional(sizes, counts, capacity, limit, bins));
}

BinPackingResult binpacking_min_bins(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                     std::int64_t capacity, std::optional<std::int64_t> limit,
                                     const NfoldOptions& options) {
  check_counts(sizes, counts);
  if (capacity < 1) throw InputError("capacity must be at least 1");
  if (limit && *limit < 1) throw InputError("the per-bin item limit must be at least 1");
  std::int64_t n = 0, volume = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (counts[j] > 0 && sizes[j] > capacity) {
      throw InputError("item type " + std::to_string(j + 1) + " is larger than the capacity");
    }
    n += counts[j];
    volume += sizes[j] * counts[j];
  }
  BinPackingResult res;
  if (n == 0) return res;
  std::int64_t lo = (volume + capacity - 1) / capacity;
  if (limit) lo = std::max(lo, (n + *limit - 1) / *limit);
  lo = std::max<std::int64_t>(lo, 1);
  std::int64_t hi = n;
  auto probe = [&](std::int64_t bins) {
    ++res.probes;
    return solve_knapsack(one_dimensional(sizes, counts, capacity, limit, bins), options);
  };
  // n bins always suffice: one item each.
  std::optional<std::vector<PackedBin>> best;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    auto packing = probe(mid);
    if (packing) {
      hi = mid;
      best = std::move(packing);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) best = probe(lo);
  if (!best) throw std::logic_error("one item per bin must be feasible");
  res.bins = lo;
  res.packing = std::move(*best);
  return res;
}

CuttingStockModel cutting_stock_to_mimo(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                        const std::vector<RollType>& rolls) {
  check_counts(sizes, counts);
  const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  KnapsackInstance k;
  for (std::size_t j = 0; j < sizes.size(); ++j) k.items.push_back({{sizes[j]}, counts[j]});
  CuttingStockModel model;
  for (const RollType& r : rolls) {
    if (r.length < 0 || r.cost.sign() < 0) throw InputError("roll types need nonnegative length and cost");
    k.knapsacks.push_back({{r.length}, n});
    model.charge.push_back(r.cost);
  }
  model.mimo = knapsack_to_mimo(k);
  return model;
}

CuttingStockResult solve_cutting_stock(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                       const std::vector<RollType>& rolls, const NfoldOptions& options) {
  const CuttingStockModel model = cutting_stock_to_mimo(sizes, counts, rolls);
  CuttingStockResult res;
  if (std::all_of(counts.begin(), counts.end(), [](std::int64_t v) { return v == 0; })) {
    res.status = NfoldStatus::kOptimal;
    res.rolls_used.assign(rolls.size(), 0);
    return res;
  }
  const FixedChargeResult fc = solve_fixed_charge(model.mimo, model.charge, options);
  res.guesses = fc.guesses;
  if (fc.status != NfoldStatus::kOptimal) return res;
  res.status = NfoldStatus::kOptimal;
  res.cost = fc.objective;
  res.patterns = used_bins(fc.solution);
  res.rolls_used.assign(rolls.size(), 0);
  for (const PackedBin& b : res.patterns) res.rolls_used[b.type] += b.count;
  return res;
}

// ---------------------------------------------------------------------------
// Surfing

void SurfingInstance::validate() const {
  if (supply.size() != servers) throw InputError("one supply vector per server is required");
  for (const auto& s : supply) {
    if (s.size() != commodities) throw InputError("supply vectors need one entry per commodity");
    for (std::int64_t v : s) {
      if (v < 0) throw InputError("negative supply");
    }
  }
  for (std::size_t i = 0; i < surfers.size(); ++i) {
    const SurferType& st = surfers[i];
    const std::string what = "surfer type " + std::to_string(i + 1);
    if (st.count < 0) throw InputError(what + ": negative multiplicity");
    if (st.demand.size() != commodities || st.capacity.size() != servers || st.cost.size() != commodities) {
      throw InputError(what + ": wrong dimensions");
    }
    for (const auto& row : st.cost) {
      if (row.size() != servers) throw InputError(what + ": cost needs one entry per server");
      for (std::int64_t c : row) {
        if (c < 0) throw InputError(what + ": negative cost");
      }
    }
    for (std::int64_t v : st.demand) {
      if (v < 0) throw InputError(what + ": negative demand");
    }
    for (std::int64_t v : st.capacity) {
      if (v < 0) throw InputError(what + ": negative capacity");
    }
  }
}

MimoInstance surfing_to_mimo(const SurfingInstance& inst) {
  inst.validate();
  const std::size_t dc = inst.commodities, ds = inst.servers, d = dc * ds;
  MimoInstance m;
  m.d = d;
  Config supply(d);
  for (std::size_t j = 0; j < dc; ++j) {
    for (std::size_t k = 0; k < ds; ++k) supply[surfing_coordinate(inst, j, k)] = inst.supply[k][j];
  }
  m.target = supply;
  for (const SurferType& st : inst.surfers) {
    std::vector<std::vector<long long>> rows;
    Config rhs;
    for (std::size_t j = 0; j < dc; ++j) {
      std::vector<long long> row(d, 0);
      for (std::size_t k = 0; k < ds; ++k) row[surfing_coordinate(inst, j, k)] = 1;
      rows.push_back(row);
      rhs.push_back(st.demand[j]);
      for (auto& v : row) v = -v;
      rows.push_back(row);
      rhs.push_back(-st.demand[j]);
    }
    for (std::size_t k = 0; k < ds; ++k) {
      std::vector<long long> row(d, 0);
      for (std::size_t j = 0; j < dc; ++j) row[surfing_coordinate(inst, j, k)] = 1;
      rows.push_back(row);
      rhs.push_back(st.capacity[k]);
    }
    MimoType tp = boxed_type(rows, rhs, supply, st.count);
    for (std::size_t j = 0; j < dc; ++j) {
      for (std::size_t k = 0; k < ds; ++k) {
        if (st.cost[j][k] == 0) continue;
        MimoObjectiveTerm term;
        term.coordinates = {surfing_coordinate(inst, j, k)};
        term.linear = Rational(static_cast<long long>(st.cost[j][k]));
        tp.objective.push_back(term);
      }
    }
    m.types.push_back(std::move(tp));
  }
  // Unused supply goes to the slack surfer.
  m.types.push_back(boxed_type({}, {}, supply, 1));
  return m;
}

SurfingResult solve_surfing(const SurfingInstance& inst, const NfoldOptions& options) {
  inst.validate();
  SurfingResult res;
  for (std::size_t j = 0; j < inst.commodities; ++j) {
    std::int64_t need = 0, have = 0;
    for (const SurferType& st : inst.surfers) need += st.count * st.demand[j];
    for (std::size_t k = 0; k < inst.servers; ++k) have += inst.supply[k][j];
    if (need > have) {
      res.demand_exceeds_supply = true;
      return res;
    }
  }
  const MimoInstance m = surfing_to_mimo(inst);
  const MimoSolution sol = solve_mimo(m, options);
  if (sol.status != NfoldStatus::kOptimal) return res;
  res.status = NfoldStatus::kOptimal;
  res.cost = sol.objective;
  for (std::size_t i = 0; i < inst.surfers.size(); ++i) {
    for (const MimoElement& e : sol.per_type[i]) {
      SurferAssignment a;
      a.type = i;
      a.count = to_small(e.count);
      a.amount.assign(inst.commodities, std::vector<std::int64_t>(inst.servers, 0));
      for (std::size_t j = 0; j < inst.commodities; ++j) {
        for (std::size_t k = 0; k < inst.servers; ++k) a.amount[j][k] = e.x[surfing_coordinate(inst, j, k)];
      }
      res.assignments.push_back(std::move(a));
    }
  }
  return res;
}

}  // namespace hmo

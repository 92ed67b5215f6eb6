#pragma once

#include <cstdint>
#include <vector>

#include "hmo/mimo.hpp"
#include "hmo/nfold.hpp"
#include "hmo/rational.hpp"

namespace hmo {

// ---------------------------------------------------------------------------
// Packing

struct ItemType {
  std::vector<std::int64_t> size;  // one entry per dimension
  std::int64_t count = 0;
};

struct KnapsackType {
  std::vector<std::int64_t> capacity;  // one entry per dimension
  std::int64_t count = 0;              // μ
};

struct KnapsackInstance {
  std::size_t dims = 1;
  std::vector<ItemType> items;
  std::vector<KnapsackType> knapsacks;

  // Throws InputError on negative data or mismatched dimensions.
  void validate() const;
};

// Item counts of one bin, the knapsack type it uses and how many bins are
// packed identically.
struct PackedBin {
  std::size_t type = 0;
  std::vector<std::int64_t> items;
  std::int64_t count = 1;
};

// One block per knapsack type, {x : Σ_j s_{j,δ} x_j ≤ b_δ, 0 ≤ x ≤ n}, no
// auxiliary coordinates and no objective; target n.
MimoInstance knapsack_to_mimo(const KnapsackInstance& inst);

// A packing of every item into at most μ bins per type, or nullopt.
std::optional<std::vector<PackedBin>> solve_knapsack(const KnapsackInstance& inst, const NfoldOptions& options = {});

struct BinPackingResult {
  std::int64_t bins = 0;
  std::vector<PackedBin> packing;  // nonempty patterns only
  std::size_t probes = 0;
};

// Fewest bins of one capacity holding every item; binary search over
// [⌈volume/capacity⌉, n]. `limit` caps the number of items per bin.
// Throws InputError for an item larger than the capacity.
BinPackingResult binpacking_min_bins(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                     std::int64_t capacity, std::optional<std::int64_t> limit = std::nullopt,
                                     const NfoldOptions& options = {});

// The two-dimensional knapsack encoding of cardinality bin packing with
// `bins` bins: sizes (s_j, 1) against capacity (capacity, limit).
MimoInstance cardinality_bp_to_mimo(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                    std::int64_t capacity, std::int64_t limit, std::int64_t bins);

struct RollType {
  std::int64_t length = 0;
  Rational cost;
};

// Fixed-charge MIMO: one block per roll type with multiplicity n and the
// roll's cost as its charge.
struct CuttingStockModel {
  MimoInstance mimo;
  RationalVector charge;
};

CuttingStockModel cutting_stock_to_mimo(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                        const std::vector<RollType>& rolls);

struct CuttingStockResult {
  NfoldStatus status = NfoldStatus::kInfeasible;
  Rational cost;
  std::vector<std::int64_t> rolls_used;  // per roll type
  std::vector<PackedBin> patterns;       // nonempty cutting patterns
  std::size_t guesses = 0;
};

CuttingStockResult solve_cutting_stock(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts,
                                       const std::vector<RollType>& rolls, const NfoldOptions& options = {});

// ---------------------------------------------------------------------------
// Surfing

struct SurferType {
  std::int64_t count = 0;                       // μ
  std::vector<std::int64_t> demand;             // per commodity
  std::vector<std::int64_t> capacity;           // per server
  std::vector<std::vector<std::int64_t>> cost;  // [commodity][server]
};

struct SurfingInstance {
  std::size_t commodities = 0, servers = 0;
  std::vector<std::vector<std::int64_t>> supply;  // [server][commodity]
  std::vector<SurferType> surfers;

  void validate() const;
};

// Coordinate of (commodity j, server k) in the MIMO vector.
inline std::size_t surfing_coordinate(const SurfingInstance& inst, std::size_t j, std::size_t k) {
  return j * inst.servers + k;
}

// τ surfer blocks plus a zero-cost slack block of multiplicity 1 boxed by
// the supply; target is the supply vector.
MimoInstance surfing_to_mimo(const SurfingInstance& inst);

struct SurferAssignment {
  std::size_t type = 0;
  std::vector<std::vector<std::int64_t>> amount;  // [commodity][server]
  std::int64_t count = 0;                         // surfers sharing it
};

struct SurfingResult {
  NfoldStatus status = NfoldStatus::kInfeasible;
  Rational cost;
  std::vector<SurferAssignment> assignments;
  bool demand_exceeds_supply = false;  // infeasible without solving
};

SurfingResult solve_surfing(const SurfingInstance& inst, const NfoldOptions& options = {});

}  // namespace hmo

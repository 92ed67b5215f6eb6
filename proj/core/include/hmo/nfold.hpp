#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmo/ilp.hpp"
#include "hmo/lattice.hpp"
#include "hmo/rational.hpp"

namespace hmo {

struct MimoInstance;

using Config = std::vector<std::int64_t>;

// f(c) = linear·c + Σ_j tables[j][c_j − lower_j]. Both parts may be empty.
struct BrickObjective {
  RationalVector linear;
  std::vector<std::optional<RationalVector>> tables;

  enum class Kind { kNone, kLinear, kSeparableConvex };
  Kind kind() const;
  bool has_tables() const;
};

struct BrickType {
  IntegerMatrix e1;  // r × t
  IntegerMatrix e2;  // s × t
  Config lower, upper;
  Config rhs;  // length s
  BrickObjective objective;

  std::size_t t() const { return lower.size(); }
  // Throws InputError on inconsistent dimensions, lower > upper or bad tables.
  void validate() const;
  Rational cost(const Config& c) const;
  Config link(const Config& c) const;  // E1 c
  bool contains(const Config& c) const;
  // min f(c) over the brick polytope's integer points, as an IntegerProgram
  // whose first t columns are c.
  IntegerProgram brick_program() const;
};

struct HugeNfoldInstance {
  std::vector<BrickType> types;
  std::vector<std::int64_t> multiplicity;  // μ, one per type
  Config b0;                               // length r

  std::size_t r() const { return b0.size(); }
  std::size_t tau() const { return types.size(); }
  void validate() const;
};

struct ConfigurationList {
  std::vector<Config> configs;
  std::vector<Rational> costs;
};

// Every integer point of the brick polytope in lexicographic order; throws
// CapacityError once more than cap points exist.
std::vector<Config> enumerate_configurations(const BrickType& type, std::size_t cap);

// One cheapest configuration per distinct linking image E1 c, ordered by
// image. Equivalent for the configuration programs because columns with equal
// image differ only in cost. Throws CapacityError beyond cap images.
// When usable_range is given, images outside the box are skipped.
ConfigurationList enumerate_linking_configurations(const BrickType& type, std::size_t cap,
                                                   const std::optional<std::pair<Config, Config>>& usable_range = {});

// ConfILP: r linking rows Σ (E1 c) y = b⁰ then τ rows Σ_c y(i,c) = μⁱ; one
// column per (type, configuration) in list order, bounds [0, μⁱ].
IntegerProgram build_conf_ilp(const HugeNfoldInstance& inst, const std::vector<ConfigurationList>& configs);

struct PricingResult {
  Config config;
  Rational value;  // f(c) − α·E1 c
  Rational reduced_cost;  // value − β
};

// Exact minimiser of f(c) − (α E1) c over the brick polytope, lexicographically
// smallest among minimisers; std::nullopt when value ≥ β (no violated dual
// constraint). Throws InputError when the brick has no integer point.
std::optional<PricingResult> price_type(const BrickType& type, const RationalVector& alpha, const Rational& beta,
                                        bool use_cost = true);

struct ConfLpColumn {
  std::size_t type;
  Config config;
  Rational cost;
};

struct ConfLpResult {
  bool feasible = false;
  Rational objective;
  std::vector<ConfLpColumn> columns;  // every generated column
  RationalVector y;                   // master value per column
  RationalVector alpha;               // duals of the linking rows
  RationalVector beta;                // duals of the multiplicity rows
  std::size_t iterations = 0;
  std::size_t support() const;
};

// Column generation for the configuration LP; the result is a basic optimum
// of the final restricted master.
ConfLpResult solve_conf_lp(const HugeNfoldInstance& inst);

struct IntegralBricks {
  std::size_t type;
  Config config;
  mpz_class count;
};

struct FractionalBricks {
  std::size_t type;
  mpz_class count;       // 𝔣ᵢ = Σ_c {y(i,c)}
  RationalVector brick;  // ĉᵢ = (1/𝔣ᵢ) Σ_c {y(i,c)} c
};

struct PhiResult {
  std::vector<IntegralBricks> integral;
  std::vector<FractionalBricks> fractional;
  mpz_class fractional_count() const;
};

// φ(y) for per-type multiplicities μ; throws InputError if Σ_c y(i,c) ≠ μⁱ.
PhiResult phi(const std::vector<ConfLpColumn>& columns, const RationalVector& y,
              const std::vector<std::int64_t>& multiplicity);

// ⌈(r+τ)·26t⁴·max(1, log₂(t·normE2))·(2r)^{r+1}·(normE·s)^{3rs}⌉, computed
// with integer arithmetic only.
mpz_class proximity_bound(std::uint64_t r, std::uint64_t s, std::uint64_t t, std::uint64_t tau,
                          const mpz_class& norm_e2, const mpz_class& norm_e);

enum class SolveMode { kAuto, kDirect, kHuge };

const char* to_string(SolveMode m);

struct NfoldOptions {
  SolveMode mode = SolveMode::kAuto;
  std::size_t conf_cap = 200000;
  // Largest explicit brick count handed to branch and bound when the reduced
  // instance has too many configurations to enumerate.
  std::size_t explicit_brick_limit = 64;
};

struct NfoldStats {
  SolveMode mode_used = SolveMode::kDirect;
  std::size_t configurations = 0;
  std::size_t columns = 0;
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::optional<mpz_class> proximity;
  std::optional<mpz_class> reduced_bricks;  // ‖μ̄‖₁ of the auxiliary instance
};

enum class NfoldStatus { kOptimal, kInfeasible };

struct BrickCount {
  std::size_t type;
  Config config;
  mpz_class count;
};

struct NfoldSolution {
  NfoldStatus status = NfoldStatus::kInfeasible;
  std::vector<BrickCount> bricks;  // sorted by (type, config), counts > 0
  Rational objective;
  NfoldStats stats;
};

NfoldSolution reduce_and_solve(const HugeNfoldInstance& inst, const NfoldOptions& options = {});

// Re-checks per-type counts, the linking equation and brick membership;
// returns human-readable violations.
std::vector<std::string> check_nfold_solution(const HugeNfoldInstance& inst, const NfoldSolution& sol);

struct ReductionReport {
  std::size_t r = 0, t = 0;
  std::size_t s = 0;          // rows of E2 as built (non-singleton inequality rows)
  std::size_t s_lemma = 0;    // 2M, the row count quoted for the reduction
  std::size_t m_rows = 0;     // M
  std::size_t d_aux = 0;      // D
};

// MIMO → huge N-fold: brick (x, x′, slack) with E1 = (I 0), E2 = (A | I) over
// the non-singleton rows (singleton rows become bounds), finite boxes derived
// from the rows and, where needed, by LP; b⁰ = n. Throws InputError when a
// polytope is unbounded.
HugeNfoldInstance mimo_to_nfold(const MimoInstance& mimo, ReductionReport* report = nullptr);

}  // namespace hmo

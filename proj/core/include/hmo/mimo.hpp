#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmo/lattice.hpp"
#include "hmo/nfold.hpp"
#include "hmo/rational.hpp"

namespace hmo {

// One summand of an element objective. Terms over more than one coordinate
// are cross terms and are rejected by validation.
struct MimoObjectiveTerm {
  std::vector<std::size_t> coordinates;  // indices into (x, x′)
  std::optional<Rational> linear;        // coefficient·v
  // Convex values at table_lower, table_lower+1, ...; must cover the box of
  // the coordinate.
  std::optional<RationalVector> table;
  std::int64_t table_lower = 0;
};

// Element polytope {(x, x′) ∈ Z^{d+D} : A (x, x′) ≤ b}; only x is summed.
struct MimoType {
  std::size_t aux = 0;  // D
  IntegerMatrix a;      // M × (d + D)
  Config b;             // length M
  std::int64_t multiplicity = 0;
  std::vector<MimoObjectiveTerm> objective;
};

struct MimoInstance {
  std::size_t d = 0;
  std::vector<MimoType> types;
  Config target;  // n, length d
};

struct MimoParameters {
  std::size_t d = 0, tau = 0;
  std::size_t m = 0;      // max rows over types
  std::size_t aux = 0;    // max D over types
  mpz_class delta;        // max |entry| of any A
  mpz_class n_norm;       // ‖n‖∞
  mpz_class elements;     // N = Σ μ
};

// Checks dimensions, objective shape (no cross terms, convex tables of the
// right length) and that every polytope is bounded, one LP per coordinate
// direction. Throws InputError with the offending type.
MimoParameters validate_instance(const MimoInstance& inst);

struct MimoElement {
  Config x;
  Config aux;
  mpz_class count;
};

struct MimoSolution {
  NfoldStatus status = NfoldStatus::kInfeasible;
  std::vector<std::vector<MimoElement>> per_type;
  Rational objective;
  NfoldStats stats;
};

MimoSolution solve_mimo(const MimoInstance& inst, const NfoldOptions& options = {});

// Fixed-charge variant: element i costs charge[i] whenever used; the number
// of used elements per type ranges over 0..μⁱ. Counts are tried in
// nondecreasing total charge (ties lexicographically) and the first feasible
// one is returned; objective is its total charge.
struct FixedChargeResult {
  NfoldStatus status = NfoldStatus::kInfeasible;
  std::vector<std::int64_t> used;
  Rational objective;
  MimoSolution solution;
  std::size_t guesses = 0;
};

FixedChargeResult solve_fixed_charge(const MimoInstance& inst, const RationalVector& charge,
                                     const NfoldOptions& options = {});

// Human-readable violations: counts, polytope membership, the sum, and the
// reported objective.
std::vector<std::string> verify_solution(const MimoInstance& inst, const MimoSolution& sol);

// Integer box of the element polytope: singleton rows give bounds directly,
// the remaining open sides are closed by LP. std::nullopt when the polytope
// has no integer box; throws InputError when it is unbounded.
std::optional<std::pair<Config, Config>> element_box(const MimoType& type, std::size_t d);

// Objective of one element (x, x′) of type i.
Rational element_cost(const MimoType& type, std::size_t d, const Config& x, const Config& aux);

}  // namespace hmo

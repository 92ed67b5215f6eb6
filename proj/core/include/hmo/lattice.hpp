#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace hmo {

using IntVector = std::vector<mpz_class>;

struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> entries;  // row-major

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);

  mpz_class& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  mpz_class norm_inf() const;
  IntVector multiply(const IntVector& x) const;
  bool operator==(const IntegerMatrix&) const = default;
};

IntVector to_int_vector(const std::vector<long long>& v);

// y ⊑ x: y_i·x_i ≥ 0 and |y_i| ≤ |x_i| for every i.
bool conformal_leq(const IntVector& y, const IntVector& x);

// Guaranteed ∞-norm bound on Graver elements of an s-row matrix,
// ‖A‖∞(2s‖A‖∞+1)^s, raised to 1 for the zero matrix whose Graver elements
// are the unit vectors.
mpz_class graver_norm_bound(const IntegerMatrix& a);

struct GraverBasis {
  IntegerMatrix matrix;
  // Sorted by ℓ1 norm, then lexicographically; closed under negation.
  std::vector<IntVector> elements;
};

// ⊑-minimal nonzero kernel vectors with ‖·‖∞ ≤ norm_cap by bounded enumeration.
// Throws InputError when norm_cap < graver_norm_bound(a) unless
// allow_small_cap is set (the result is then only the capped part).
GraverBasis graver_basis(const IntegerMatrix& a, const mpz_class& norm_cap, bool allow_small_cap = false);

struct DecompositionTerm {
  IntVector element;
  mpz_class coefficient;
};

// x = Σ coefficient·element with every element a Graver element of a that is
// conformal to x; at most 2n−2 terms. Greedy extraction of the largest
// conformal multiple; if that overshoots the term bound a minimum-term
// decomposition is computed exactly. Throws InputError unless a·x = 0.
std::vector<DecompositionTerm> positive_sum_decompose(const IntegerMatrix& a, const IntVector& x);
std::vector<DecompositionTerm> positive_sum_decompose(const GraverBasis& basis, const IntVector& x);

// Distinct denominators d_i with Σ 1/d_i = p/q, via the binary expansion of
// b and r in a·p = b·q + r where a = 2^k is the largest power of two below q.
// Length ≤ ⌊2 log₂ q⌋ + 1, denominators ≤ q², returned in increasing order.
std::vector<mpz_class> egyptian_fraction(const mpz_class& p, const mpz_class& q);

}  // namespace hmo

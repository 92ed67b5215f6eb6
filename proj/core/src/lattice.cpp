#include "hmo/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "hmo/errors.hpp"
#include "hmo/ilp.hpp"

namespace hmo {
namespace {

using I64Vec = std::vector<std::int64_t>;

bool conformal_leq_i64(const I64Vec& y, const I64Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if ((y[i] > 0) != (x[i] > 0) || x[i] == 0) return false;
    if (std::llabs(y[i]) > std::llabs(x[i])) return false;
  }
  return true;
}

std::int64_t l1(const I64Vec& v) {
  std::int64_t s = 0;
  for (std::int64_t e : v) s += std::llabs(e);
  return s;
}

bool graver_order(const I64Vec& a, const I64Vec& b) {
  const std::int64_t la = l1(a), lb = l1(b);
  if (la != lb) return la < lb;
  return a < b;
}

std::int64_t checked_small(const mpz_class& z, const char* what) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw CapacityError(std::string(what) + " exceeds the enumeration range");
  return z.get_si();
}

}  // namespace

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = mpz_class(std::to_string(rows[i][j]));
  }
  return m;
}

mpz_class IntegerMatrix::norm_inf() const {
  mpz_class n = 0;
  for (const mpz_class& e : entries) {
    if (abs(e) > n) n = abs(e);
  }
  return n;
}

IntVector IntegerMatrix::multiply(const IntVector& x) const {
  if (x.size() != cols) throw InputError("matrix-vector dimension mismatch");
  IntVector r(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) r[i] += at(i, j) * x[j];
  }
  return r;
}

IntVector to_int_vector(const std::vector<long long>& v) {
  IntVector r;
  r.reserve(v.size());
  for (long long e : v) r.emplace_back(std::to_string(e));
  return r;
}

bool conformal_leq(const IntVector& y, const IntVector& x) {
  if (y.size() != x.size()) throw InputError("conformal_leq: dimension mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int sy = sgn(y[i]);
    if (sy == 0) continue;
    if (sy != sgn(x[i])) return false;
    if (abs(y[i]) > abs(x[i])) return false;
  }
  return true;
}

mpz_class graver_norm_bound(const IntegerMatrix& a) {
  const mpz_class d = a.norm_inf();
  mpz_class base = 2 * mpz_class(static_cast<unsigned long>(a.rows)) * d + 1;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a.rows));
  mpz_class b = d * p;
  return b < 1 ? mpz_class(1) : b;
}

GraverBasis graver_basis(const IntegerMatrix& a, const mpz_class& norm_cap, bool allow_small_cap) {
  if (a.entries.size() != a.rows * a.cols) throw InputError("graver_basis: inconsistent matrix dimensions");
  if (!allow_small_cap && norm_cap < graver_norm_bound(a)) {
    throw InputError("graver_basis: norm cap " + norm_cap.get_str() + " is below the guaranteed bound " +
                     graver_norm_bound(a).get_str());
  }
  const std::size_t m = a.rows, n = a.cols;
  const std::int64_t cap = checked_small(norm_cap, "norm cap");
  std::vector<std::int64_t> A(m * n);
  for (std::size_t k = 0; k < A.size(); ++k) A[k] = checked_small(a.entries[k], "matrix entry");
  // reach[i*(n+1)+j] = cap·Σ_{j'≥j} |A_ij'|: the largest |contribution| the
  // coordinates j.. can still add to row i.
  std::vector<std::int64_t> reach(m * (n + 1), 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = n; j-- > 0;) {
      const std::int64_t add = cap * std::llabs(A[i * n + j]);
      if (add / (cap == 0 ? 1 : cap) != std::llabs(A[i * n + j])) throw CapacityError("graver enumeration overflow");
      reach[i * (n + 1) + j] = reach[i * (n + 1) + j + 1] + add;
    }
  }

  std::vector<I64Vec> kernel;
  I64Vec x(n, 0);
  std::vector<std::int64_t> partial(m, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (std::llabs(partial[i]) > reach[i * (n + 1) + j]) return;
    }
    if (j == n) {
      for (std::int64_t e : x) {
        if (e != 0) {
          kernel.push_back(x);
          return;
        }
      }
      return;
    }
    if (j + 1 == n) {
      // The last coordinate is forced by any row with a nonzero entry.
      std::size_t pivot_row = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (A[i * n + j] != 0) {
          pivot_row = i;
          break;
        }
      }
      if (pivot_row != m) {
        const std::int64_t c = A[pivot_row * n + j];
        if (partial[pivot_row] % c != 0) return;
        const std::int64_t v = -partial[pivot_row] / c;
        if (std::llabs(v) > cap) return;
        for (std::size_t i = 0; i < m; ++i) {
          if (partial[i] + A[i * n + j] * v != 0) return;
        }
        x[j] = v;
        for (std::size_t i = 0; i < m; ++i) partial[i] += A[i * n + j] * v;
        rec(j + 1);
        for (std::size_t i = 0; i < m; ++i) partial[i] -= A[i * n + j] * v;
        x[j] = 0;
        return;
      }
    }
    for (std::int64_t v = -cap; v <= cap; ++v) {
      x[j] = v;
      for (std::size_t i = 0; i < m; ++i) partial[i] += A[i * n + j] * v;
      rec(j + 1);
      for (std::size_t i = 0; i < m; ++i) partial[i] -= A[i * n + j] * v;
    }
    x[j] = 0;
  };
  rec(0);

  std::sort(kernel.begin(), kernel.end(), graver_order);
  std::vector<I64Vec> minimal;
  for (const I64Vec& v : kernel) {
    bool dominated = false;
    for (const I64Vec& g : minimal) {
      if (conformal_leq_i64(g, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(v);
  }
  GraverBasis basis;
  basis.matrix = a;
  for (const I64Vec& g : minimal) {
    IntVector e;
    e.reserve(n);
    for (std::int64_t c : g) e.emplace_back(static_cast<long>(c));
    basis.elements.push_back(std::move(e));
  }
  return basis;
}

std::vector<DecompositionTerm> positive_sum_decompose(const IntegerMatrix& a, const IntVector& x) {
  if (x.size() != a.cols) throw InputError("positive_sum_decompose: dimension mismatch");
  for (const mpz_class& r : a.multiply(x)) {
    if (r != 0) throw InputError("positive_sum_decompose: vector is not in the kernel");
  }
  return positive_sum_decompose(graver_basis(a, graver_norm_bound(a)), x);
}

std::vector<DecompositionTerm> positive_sum_decompose(const GraverBasis& basis, const IntVector& x) {
  const IntegerMatrix& a = basis.matrix;
  if (x.size() != a.cols) throw InputError("positive_sum_decompose: dimension mismatch");
  for (const mpz_class& r : a.multiply(x)) {
    if (r != 0) throw InputError("positive_sum_decompose: vector is not in the kernel");
  }
  const std::size_t n = x.size();
  std::vector<DecompositionTerm> terms;
  IntVector rest = x;
  for (;;) {
    bool zero = std::all_of(rest.begin(), rest.end(), [](const mpz_class& v) { return v == 0; });
    if (zero) break;
    const IntVector* best = nullptr;
    mpz_class best_mult = 0;
    for (const IntVector& g : basis.elements) {
      if (!conformal_leq(g, rest)) continue;
      mpz_class mult = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (g[i] == 0) continue;
        mpz_class q = abs(rest[i]) / abs(g[i]);
        if (mult < 0 || q < mult) mult = q;
      }
      if (mult > best_mult) {
        best_mult = mult;
        best = &g;
      }
    }
    if (!best) throw InputError("positive_sum_decompose: no conformal Graver element (basis incomplete)");
    for (std::size_t i = 0; i < n; ++i) rest[i] -= best_mult * (*best)[i];
    terms.push_back({*best, best_mult});
  }
  const std::size_t limit = n >= 1 ? 2 * n - 2 : 0;
  if (terms.size() <= std::max<std::size_t>(limit, 1)) return terms;

  // Minimum-term decomposition over the conformal elements:
  // min Σ z_g  s.t.  Σ α_g g = x,  0 ≤ α_g ≤ M z_g,  z_g ∈ {0,1}.
  std::vector<const IntVector*> conf;
  for (const IntVector& g : basis.elements) {
    if (conformal_leq(g, x)) conf.push_back(&g);
  }
  mpz_class big = 0;
  for (const mpz_class& v : x) big = std::max(big, mpz_class(abs(v)));
  IntegerProgram ip;
  const std::size_t k = conf.size();
  for (std::size_t g = 0; g < k; ++g) ip.add_variable(Rational(0), Rational(0), Rational(big), true);
  for (std::size_t g = 0; g < k; ++g) ip.add_variable(Rational(1), Rational(0), Rational(1), true);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(2 * k);
    for (std::size_t g = 0; g < k; ++g) row[g] = Rational((*conf[g])[i]);
    ip.base.add_row(std::move(row), Relation::kEq, Rational(x[i]));
  }
  for (std::size_t g = 0; g < k; ++g) {
    RationalVector row(2 * k);
    row[g] = Rational(1);
    row[k + g] = -Rational(big);
    ip.base.add_row(std::move(row), Relation::kLe, Rational(0));
  }
  IlpResult r = solve_ilp(ip);
  if (r.status != IlpStatus::kOptimal) throw std::logic_error("positive_sum_decompose: exact decomposition failed");
  std::vector<DecompositionTerm> exact;
  for (std::size_t g = 0; g < k; ++g) {
    if (r.values[g].is_zero()) continue;
    exact.push_back({*conf[g], r.values[g].numerator()});
  }
  return exact;
}

std::vector<mpz_class> egyptian_fraction(const mpz_class& p, const mpz_class& q) {
  if (p < 1 || q < 1 || p > q) throw InputError("egyptian_fraction needs 1 <= p <= q");
  if (q == 1) return {mpz_class(1)};
  // a = 2^k, the largest power of two strictly below q.
  unsigned long k = 0;
  mpz_class a = 1;
  while (2 * a < q) {
    a *= 2;
    ++k;
  }
  const mpz_class ap = a * p;
  const mpz_class b = ap / q;
  const mpz_class r = ap % q;
  std::vector<mpz_class> dens;
  for (unsigned long i = 0; i <= k; ++i) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, k - i);
    if (mpz_tstbit(b.get_mpz_t(), i)) dens.push_back(pw);
    if (mpz_tstbit(r.get_mpz_t(), i)) dens.push_back(q * pw);
  }
  std::sort(dens.begin(), dens.end());
  return dens;
}

}  // namespace hmo

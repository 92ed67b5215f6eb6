#pragma once
// Brute-force lattice references: full box scans with no pruning.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

inline bool conf_leq(const Vec& y, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (x[i] == 0 || (y[i] > 0) != (x[i] > 0) || std::llabs(y[i]) > std::llabs(x[i])) return false;
  }
  return true;
}

// Every nonzero v with ‖v‖∞ ≤ cap and A v = 0.
inline std::vector<Vec> kernel_box(const std::vector<Vec>& a, std::size_t n, long long cap) {
  std::vector<Vec> out;
  Vec v(n, -cap);
  for (;;) {
    bool zero = std::all_of(v.begin(), v.end(), [](long long e) { return e == 0; });
    bool in_kernel = !zero;
    for (std::size_t i = 0; in_kernel && i < a.size(); ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
      in_kernel = s == 0;
    }
    if (in_kernel) out.push_back(v);
    std::size_t j = 0;
    while (j < n && v[j] == cap) v[j++] = -cap;
    if (j == n) break;
    ++v[j];
  }
  return out;
}

// Kernel vectors not conformally dominating any other nonzero kernel vector.
inline std::set<Vec> minimal_elements(const std::vector<Vec>& kernel) {
  std::set<Vec> out;
  for (const Vec& v : kernel) {
    bool minimal = true;
    for (const Vec& u : kernel) {
      if (u != v && conf_leq(u, v)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(v);
  }
  return out;
}

// Primitive kernel vectors whose support is inclusion-minimal.
inline std::set<Vec> circuits(const std::vector<Vec>& kernel) {
  auto support = [](const Vec& v) {
    unsigned s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) s |= 1u << i;
    }
    return s;
  };
  std::set<unsigned> supports;
  for (const Vec& v : kernel) supports.insert(support(v));
  std::set<Vec> out;
  for (const Vec& v : kernel) {
    const unsigned s = support(v);
    bool minimal = true;
    for (unsigned t : supports) {
      if (t != s && (t & s) == t) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    long long g = 0;
    for (long long e : v) g = std::gcd(g, std::llabs(e));
    if (g == 1) out.insert(v);
  }
  return out;
}

}  // namespace oracle

#include "hmo/nfold.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "hmo/errors.hpp"
#include "hmo/mimo.hpp"

namespace hmo {
namespace {

std::int64_t small(const mpz_class& z, const char* what) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw CapacityError(std::string(what) + " exceeds 64 bits");
  return z.get_si();
}

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v <= INT64_MIN) throw CapacityError("configuration arithmetic exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> small_entries(const IntegerMatrix& m) {
  std::vector<std::int64_t> out(m.entries.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = small(m.entries[k], "matrix entry");
  return out;
}

Rational rat(std::int64_t v) { return Rational(static_cast<long long>(v)); }

Config to_config(const RationalVector& values, std::size_t t) {
  Config c(t);
  for (std::size_t j = 0; j < t; ++j) c[j] = values[j].to_int64();
  return c;
}

// Interval of row·c over the box.
std::pair<__int128, __int128> row_range(const std::int64_t* row, const Config& lo, const Config& hi) {
  __int128 mn = 0, mx = 0;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const __int128 a = row[j];
    const __int128 p = a * lo[j], q = a * hi[j];
    mn += std::min(p, q);
    mx += std::max(p, q);
  }
  return {mn, mx};
}

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::size_t bitlen(const mpz_class& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

// ⌊log₂(m^k)⌋ for m ≥ 2 not a power of two, by power-by-squaring on an
// integer interval [lo, hi]·2^e that is truncated to `precision` bits.
mpz_class floor_log2_power(const mpz_class& m, const mpz_class& k) {
  for (std::size_t precision = 64 + 2 * bitlen(k);; precision *= 2) {
    mpz_class lo = 1, hi = 1, e = 0;
    auto trim = [&] {
      const std::size_t len = bitlen(hi);
      if (len <= precision) return;
      const std::size_t shift = len - precision;
      mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), shift);
      mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), shift);
      e += static_cast<unsigned long>(shift);
    };
    for (std::size_t bit = bitlen(k); bit-- > 0;) {
      lo *= lo;
      hi *= hi;
      e *= 2;
      trim();
      if (mpz_tstbit(k.get_mpz_t(), bit)) {
        lo *= m;
        hi *= m;
        trim();
      }
    }
    const mpz_class a = e + static_cast<unsigned long>(bitlen(lo)) - 1;
    const mpz_class b = e + static_cast<unsigned long>(bitlen(hi)) - 1;
    if (a == b) return a;
  }
}

}  // namespace

BrickObjective::Kind BrickObjective::kind() const {
  if (has_tables()) return Kind::kSeparableConvex;
  for (const Rational& w : linear) {
    if (!w.is_zero()) return Kind::kLinear;
  }
  return Kind::kNone;
}

bool BrickObjective::has_tables() const {
  return std::any_of(tables.begin(), tables.end(), [](const auto& t) { return t.has_value(); });
}

void BrickType::validate() const {
  const std::size_t n = t();
  if (upper.size() != n) throw InputError("brick bounds have different lengths");
  if (e1.cols != n || e2.cols != n || e1.entries.size() != e1.rows * n || e2.entries.size() != e2.rows * n) {
    throw InputError("brick matrices do not have t columns");
  }
  if (rhs.size() != e2.rows) throw InputError("brick right-hand side does not match E2");
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) throw InputError("brick coordinate " + std::to_string(j) + " has lower > upper");
  }
  if (!objective.linear.empty() && objective.linear.size() != n) throw InputError("linear objective length != t");
  if (!objective.tables.empty() && objective.tables.size() != n) throw InputError("objective tables length != t");
  for (std::size_t j = 0; j < objective.tables.size(); ++j) {
    if (!objective.tables[j]) continue;
    const __int128 len = static_cast<__int128>(upper[j]) - lower[j] + 1;
    if (static_cast<__int128>(objective.tables[j]->size()) != len) {
      throw InputError("objective table of coordinate " + std::to_string(j) + " does not match its box");
    }
    linearize_separable_convex(*objective.tables[j]);
  }
}

Rational BrickType::cost(const Config& c) const {
  Rational v;
  for (std::size_t j = 0; j < objective.linear.size(); ++j) v.add_mul(objective.linear[j], rat(c[j]));
  for (std::size_t j = 0; j < objective.tables.size(); ++j) {
    if (objective.tables[j]) v += (*objective.tables[j])[static_cast<std::size_t>(c[j] - lower[j])];
  }
  return v;
}

Config BrickType::link(const Config& c) const {
  Config out(e1.rows);
  for (std::size_t i = 0; i < e1.rows; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < e1.cols; ++j) s += static_cast<__int128>(small(e1.at(i, j), "E1 entry")) * c[j];
    out[i] = checked(s);
  }
  return out;
}

bool BrickType::contains(const Config& c) const {
  if (c.size() != t()) return false;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] < lower[j] || c[j] > upper[j]) return false;
  }
  for (std::size_t i = 0; i < e2.rows; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < e2.cols; ++j) s += static_cast<__int128>(small(e2.at(i, j), "E2 entry")) * c[j];
    if (s != rhs[i]) return false;
  }
  return true;
}

IntegerProgram BrickType::brick_program() const {
  IntegerProgram ip;
  const std::size_t n = t();
  for (std::size_t j = 0; j < n; ++j) {
    Rational w = objective.linear.empty() ? Rational(0) : objective.linear[j];
    ip.add_variable(std::move(w), rat(lower[j]), rat(upper[j]), true);
  }
  for (std::size_t i = 0; i < e2.rows; ++i) {
    RationalVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = Rational(e2.at(i, j));
    ip.base.add_row(std::move(row), Relation::kEq, rat(rhs[i]));
  }
  for (std::size_t j = 0; j < objective.tables.size(); ++j) {
    if (objective.tables[j]) ip.set_convex_cost(j, *objective.tables[j]);
  }
  return ip;
}

void HugeNfoldInstance::validate() const {
  if (multiplicity.size() != types.size()) throw InputError("one multiplicity per brick type is required");
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (multiplicity[i] < 0) throw InputError("negative multiplicity for type " + std::to_string(i));
    types[i].validate();
    if (types[i].e1.rows != r()) throw InputError("E1 of type " + std::to_string(i) + " does not have r rows");
  }
}

std::vector<Config> enumerate_configurations(const BrickType& type, std::size_t cap) {
  type.validate();
  const std::size_t n = type.t(), s = type.e2.rows;
  const std::vector<std::int64_t> a = small_entries(type.e2);
  // suffix_lo/hi[i*(n+1)+j]: range of Σ_{j'≥j} a_ij' c_j' over the box.
  std::vector<__int128> suffix_lo(s * (n + 1), 0), suffix_hi(s * (n + 1), 0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = n; j-- > 0;) {
      const __int128 p = static_cast<__int128>(a[i * n + j]) * type.lower[j];
      const __int128 q = static_cast<__int128>(a[i * n + j]) * type.upper[j];
      suffix_lo[i * (n + 1) + j] = suffix_lo[i * (n + 1) + j + 1] + std::min(p, q);
      suffix_hi[i * (n + 1) + j] = suffix_hi[i * (n + 1) + j + 1] + std::max(p, q);
    }
  }
  std::vector<Config> out;
  Config c(n);
  std::vector<__int128> partial(s, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    for (std::size_t i = 0; i < s; ++i) {
      const __int128 need = static_cast<__int128>(type.rhs[i]) - partial[i];
      if (need < suffix_lo[i * (n + 1) + j] || need > suffix_hi[i * (n + 1) + j]) return;
    }
    if (j == n) {
      if (out.size() == cap) throw CapacityError("more than " + std::to_string(cap) + " configurations; use column generation");
      out.push_back(c);
      return;
    }
    for (std::int64_t v = type.lower[j];; ++v) {
      c[j] = v;
      for (std::size_t i = 0; i < s; ++i) partial[i] += static_cast<__int128>(a[i * n + j]) * v;
      rec(j + 1);
      for (std::size_t i = 0; i < s; ++i) partial[i] -= static_cast<__int128>(a[i * n + j]) * v;
      if (v == type.upper[j]) break;
    }
  };
  rec(0);
  return out;
}

ConfigurationList enumerate_linking_configurations(const BrickType& type, std::size_t cap,
                                                   const std::optional<std::pair<Config, Config>>& usable_range) {
  type.validate();
  const std::size_t n = type.t(), r = type.e1.rows;
  const std::vector<std::int64_t> e1 = small_entries(type.e1);
  IntegerProgram ip = type.brick_program();

  // Linking values are read from a coordinate when E1 selects it, otherwise
  // from an extra column z_k = (E1 c)_k.
  std::vector<std::size_t> link_var(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t hit = n, nonzeros = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (e1[k * n + j] != 0) {
        ++nonzeros;
        hit = j;
      }
    }
    const bool selector = nonzeros == 1 && e1[k * n + hit] == 1 &&
                          std::find(link_var.begin(), link_var.begin() + static_cast<long>(k), hit) ==
                              link_var.begin() + static_cast<long>(k);
    if (selector) {
      link_var[k] = hit;
      continue;
    }
    const auto [mn, mx] = row_range(&e1[k * n], type.lower, type.upper);
    link_var[k] = ip.add_variable(Rational(0), rat(checked(mn)), rat(checked(mx)), true);
    RationalVector row(ip.num_vars());
    for (std::size_t j = 0; j < n; ++j) row[j] = rat(-e1[k * n + j]);
    row[link_var[k]] = Rational(1);
    ip.base.add_row(std::move(row), Relation::kEq, Rational(0));
  }
  Config lo(r), hi(r);
  for (std::size_t k = 0; k < r; ++k) {
    lo[k] = ip.base.lower[link_var[k]]->to_int64();
    hi[k] = ip.base.upper[link_var[k]]->to_int64();
    if (usable_range) {
      lo[k] = std::max(lo[k], usable_range->first[k]);
      hi[k] = std::min(hi[k], usable_range->second[k]);
    }
    if (lo[k] > hi[k]) return {};
  }

  ConfigurationList out;
  IlpModel model(ip);
  SimplexSession root = model.make_session();
  if (root.solve() == LpStatus::kInfeasible) return out;
  std::function<void(std::size_t, const SimplexSession&)> rec = [&](std::size_t k, const SimplexSession& s) {
    if (k == r) {
      IlpResult res = model.branch_and_bound(s);
      if (res.status != IlpStatus::kOptimal) return;
      if (out.configs.size() == cap) {
        throw CapacityError("more than " + std::to_string(cap) + " linking configurations; use column generation");
      }
      out.configs.push_back(to_config(res.values, n));
      out.costs.push_back(std::move(res.objective));
      return;
    }
    // The LP-feasible values of this coordinate form an interval containing
    // the current LP point. Binary search its lowest integer below the point,
    // then walk up to the first infeasible value.
    auto fixed = [&](std::int64_t v) {
      SimplexSession child = s;
      child.set_bounds(link_var[k], rat(v), rat(v));
      child.solve();
      return child;
    };
    const std::int64_t mid = std::clamp(s.value(link_var[k]).floor().to_int64(), lo[k], hi[k]);
    std::int64_t a = lo[k], b = mid;  // first feasible value lies in [a, b + 1]
    while (a <= b) {
      const std::int64_t m = a + (b - a) / 2;
      if (fixed(m).status() == LpStatus::kInfeasible) a = m + 1;
      else b = m - 1;
    }
    for (std::int64_t v = a; v <= hi[k]; ++v) {
      SimplexSession child = fixed(v);
      if (child.status() == LpStatus::kInfeasible) {
        if (v > mid) break;
        continue;
      }
      rec(k + 1, child);
    }
  };
  rec(0, root);
  return out;
}

IntegerProgram build_conf_ilp(const HugeNfoldInstance& inst, const std::vector<ConfigurationList>& configs) {
  if (configs.size() != inst.tau()) throw InputError("one configuration list per type is required");
  const std::size_t r = inst.r(), tau = inst.tau();
  IntegerProgram ip;
  std::vector<RationalVector> link_rows(r), count_rows(tau);
  for (std::size_t i = 0; i < tau; ++i) {
    const BrickType& type = inst.types[i];
    for (std::size_t c = 0; c < configs[i].configs.size(); ++c) {
      const Config& cfg = configs[i].configs[c];
      const std::size_t col = ip.add_variable(configs[i].costs[c], Rational(0), rat(inst.multiplicity[i]), true);
      const Config image = type.link(cfg);
      for (std::size_t k = 0; k < r; ++k) {
        link_rows[k].resize(col + 1);
        link_rows[k][col] = rat(image[k]);
      }
      count_rows[i].resize(col + 1);
      count_rows[i][col] = Rational(1);
    }
  }
  for (std::size_t k = 0; k < r; ++k) ip.base.add_row(std::move(link_rows[k]), Relation::kEq, rat(inst.b0[k]));
  for (std::size_t i = 0; i < tau; ++i) {
    ip.base.add_row(std::move(count_rows[i]), Relation::kEq, rat(inst.multiplicity[i]));
  }
  return ip;
}

std::optional<PricingResult> price_type(const BrickType& type, const RationalVector& alpha, const Rational& beta,
                                        bool use_cost) {
  type.validate();
  if (alpha.size() != type.e1.rows) throw InputError("price_type: one dual per linking row is required");
  BrickType priced = type;
  if (!use_cost) priced.objective = {};
  priced.objective.linear.resize(type.t());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    for (std::size_t j = 0; j < type.t(); ++j) {
      if (type.e1.at(k, j) != 0) priced.objective.linear[j].sub_mul(alpha[k], Rational(type.e1.at(k, j)));
    }
  }
  const IntegerProgram ip = priced.brick_program();
  IlpResult res = solve_ilp(ip);
  if (res.status != IlpStatus::kOptimal) throw InputError("price_type: the brick has no integer point");
  if (res.objective >= beta) return std::nullopt;
  res = solve_ilp_lexmin(ip);
  PricingResult out;
  out.config = to_config(res.values, type.t());
  out.value = res.objective;
  out.reduced_cost = res.objective - beta;
  return out;
}

std::size_t ConfLpResult::support() const {
  return static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [](const Rational& v) { return !v.is_zero(); }));
}

ConfLpResult solve_conf_lp(const HugeNfoldInstance& inst) {
  inst.validate();
  const std::size_t r = inst.r(), tau = inst.tau(), rows = r + tau;
  ConfLpResult out;
  // Seed every type in use with one feasible configuration.
  for (std::size_t i = 0; i < tau; ++i) {
    if (inst.multiplicity[i] == 0) continue;
    IlpOptions first;
    first.incumbent_limit = 1;
    BrickType plain = inst.types[i];
    plain.objective = {};
    IlpResult res = solve_ilp(plain.brick_program(), first);
    if (!res.has_solution()) return out;
    Config c = to_config(res.values, plain.t());
    out.columns.push_back({i, c, inst.types[i].cost(c)});
  }

  // Master: generated columns, then artificial ±e_row columns that carry the
  // phase-one cost and are fixed to zero afterwards.
  auto solve_master = [&](bool phase_one) {
    LinearProgram lp;
    for (const ConfLpColumn& col : out.columns) {
      lp.add_variable(phase_one ? Rational(0) : col.cost, Rational(0), std::nullopt);
    }
    for (std::size_t k = 0; k < rows; ++k) {
      for (int sgn : {1, -1}) {
        (void)sgn;
        lp.add_variable(phase_one ? Rational(1) : Rational(0), Rational(0),
                        phase_one ? Bound{} : Bound{Rational(0)});
      }
    }
    const std::size_t ncol = out.columns.size();
    std::vector<RationalVector> a(rows, RationalVector(lp.num_vars()));
    for (std::size_t c = 0; c < ncol; ++c) {
      const Config image = inst.types[out.columns[c].type].link(out.columns[c].config);
      for (std::size_t k = 0; k < r; ++k) a[k][c] = rat(image[k]);
      a[r + out.columns[c].type][c] = Rational(1);
    }
    for (std::size_t k = 0; k < rows; ++k) {
      a[k][ncol + 2 * k] = Rational(1);
      a[k][ncol + 2 * k + 1] = Rational(-1);
      const Rational rhs = k < r ? rat(inst.b0[k]) : rat(inst.multiplicity[k - r]);
      lp.add_row(std::move(a[k]), Relation::kEq, rhs);
    }
    return solve_lp(lp);
  };

  for (bool phase_one : {true, false}) {
    for (;;) {
      ++out.iterations;
      LpSolution sol = solve_master(phase_one);
      if (sol.status != LpStatus::kOptimal) throw std::logic_error("solve_conf_lp: restricted master not optimal");
      RationalVector alpha(sol.duals.begin(), sol.duals.begin() + static_cast<long>(r));
      RationalVector beta(sol.duals.begin() + static_cast<long>(r), sol.duals.end());
      bool added = false;
      for (std::size_t i = 0; i < tau; ++i) {
        if (inst.multiplicity[i] == 0) continue;
        auto priced = price_type(inst.types[i], alpha, beta[i], !phase_one);
        if (!priced) continue;
        out.columns.push_back({i, priced->config, inst.types[i].cost(priced->config)});
        added = true;
      }
      if (added) continue;
      if (phase_one) {
        if (!sol.objective.is_zero()) return out;  // no configuration mix meets b⁰
        break;
      }
      out.feasible = true;
      out.objective = sol.objective;
      out.y.assign(sol.primal.begin(), sol.primal.begin() + static_cast<long>(out.columns.size()));
      out.alpha = std::move(alpha);
      out.beta = std::move(beta);
      return out;
    }
  }
  return out;
}

mpz_class PhiResult::fractional_count() const {
  mpz_class s = 0;
  for (const FractionalBricks& f : fractional) s += f.count;
  return s;
}

PhiResult phi(const std::vector<ConfLpColumn>& columns, const RationalVector& y,
              const std::vector<std::int64_t>& multiplicity) {
  if (columns.size() != y.size()) throw InputError("phi: one value per column is required");
  const std::size_t tau = multiplicity.size();
  std::vector<Rational> total(tau);
  std::vector<Rational> frac_total(tau);
  std::vector<RationalVector> weighted(tau);
  PhiResult out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const std::size_t i = columns[c].type;
    if (i >= tau) throw InputError("phi: column type out of range");
    if (y[c].sign() < 0) throw InputError("phi: negative column value");
    total[i] += y[c];
    const mpz_class whole = y[c].floor_z();
    if (whole > 0) out.integral.push_back({i, columns[c].config, whole});
    const Rational f = y[c].frac();
    if (f.is_zero()) continue;
    frac_total[i] += f;
    weighted[i].resize(columns[c].config.size());
    for (std::size_t j = 0; j < columns[c].config.size(); ++j) weighted[i][j].add_mul(f, rat(columns[c].config[j]));
  }
  for (std::size_t i = 0; i < tau; ++i) {
    if (total[i] != rat(multiplicity[i])) throw InputError("phi: column values of type " + std::to_string(i) + " do not sum to its multiplicity");
    if (frac_total[i].is_zero()) continue;
    // Σ_c y = μ and Σ_c ⌊y⌋ are integers, hence so is the fractional mass.
    FractionalBricks fb{i, frac_total[i].numerator(), {}};
    for (const Rational& w : weighted[i]) fb.brick.push_back(w / frac_total[i]);
    out.fractional.push_back(std::move(fb));
  }
  return out;
}

mpz_class proximity_bound(std::uint64_t r, std::uint64_t s, std::uint64_t t, std::uint64_t tau,
                          const mpz_class& norm_e2, const mpz_class& norm_e) {
  if (r < 1 || s < 1 || t < 1 || tau < 1 || norm_e2 < 1 || norm_e < 1) {
    throw InputError("proximity_bound: every argument must be at least 1");
  }
  const auto z = [](std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); };
  const mpz_class k = z(r + tau) * 26 * pow_z(z(t), 4) * pow_z(z(2 * r), static_cast<unsigned long>(r + 1)) *
                      pow_z(norm_e * z(s), static_cast<unsigned long>(3 * r * s));
  const mpz_class m = z(t) * norm_e2;
  if (m <= 2) return k;  // log₂ m ≤ 1 is clamped to 1
  if (mpz_popcount(m.get_mpz_t()) == 1) return k * static_cast<unsigned long>(bitlen(m) - 1);
  // k·log₂ m is irrational here, so its ceiling is ⌊log₂ m^k⌋ + 1.
  return floor_log2_power(m, k) + 1;
}

const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::kAuto:
      return "auto";
    case SolveMode::kDirect:
      return "direct";
    case SolveMode::kHuge:
      return "huge";
  }
  return "unknown";
}

namespace {

// Linking images a configuration of a solution can have: the other N−1
// bricks contribute within [(N−1)·min, (N−1)·max] per linking row.
std::pair<Config, Config> usable_images(const HugeNfoldInstance& inst) {
  const std::size_t r = inst.r();
  __int128 bricks = 0;
  for (std::int64_t m : inst.multiplicity) bricks += m;
  Config lo(r), hi(r);
  for (std::size_t k = 0; k < r; ++k) {
    __int128 mn = 0, mx = 0;
    bool first = true;
    for (std::size_t i = 0; i < inst.tau(); ++i) {
      if (inst.multiplicity[i] == 0) continue;
      const BrickType& tp = inst.types[i];
      const std::vector<std::int64_t> e1 = small_entries(tp.e1);
      const auto [a, b] = row_range(&e1[k * tp.t()], tp.lower, tp.upper);
      mn = first ? a : std::min(mn, a);
      mx = first ? b : std::max(mx, b);
      first = false;
    }
    const __int128 rest = bricks > 0 ? bricks - 1 : 0;
    const __int128 l = inst.b0[k] - rest * mx, h = inst.b0[k] - rest * mn;
    lo[k] = static_cast<std::int64_t>(std::clamp<__int128>(l, INT64_MIN + 1, INT64_MAX));
    hi[k] = static_cast<std::int64_t>(std::clamp<__int128>(h, INT64_MIN + 1, INT64_MAX));
  }
  return {lo, hi};
}

std::vector<ConfigurationList> linking_lists(const HugeNfoldInstance& inst, std::size_t cap, NfoldStats& stats) {
  const auto usable = usable_images(inst);
  std::vector<ConfigurationList> lists(inst.tau());
  std::size_t total = 0;
  for (std::size_t i = 0; i < inst.tau(); ++i) {
    if (inst.multiplicity[i] == 0) continue;
    lists[i] = enumerate_linking_configurations(inst.types[i], cap - std::min(cap, total), usable);
    total += lists[i].configs.size();
  }
  stats.configurations = total;
  return lists;
}

void sort_bricks(std::vector<BrickCount>& bricks) {
  std::sort(bricks.begin(), bricks.end(), [](const BrickCount& a, const BrickCount& b) {
    return a.type != b.type ? a.type < b.type : a.config < b.config;
  });
  std::vector<BrickCount> merged;
  for (BrickCount& b : bricks) {
    if (!merged.empty() && merged.back().type == b.type && merged.back().config == b.config) {
      merged.back().count += b.count;
    } else if (b.count > 0) {
      merged.push_back(std::move(b));
    }
  }
  bricks = std::move(merged);
}

Rational total_cost(const HugeNfoldInstance& inst, const std::vector<BrickCount>& bricks) {
  Rational v;
  for (const BrickCount& b : bricks) v.add_mul(Rational(b.count), inst.types[b.type].cost(b.config));
  return v;
}

NfoldSolution solve_with_lists(const HugeNfoldInstance& inst, const std::vector<ConfigurationList>& lists,
                               NfoldStats stats) {
  NfoldSolution sol;
  const IntegerProgram ip = build_conf_ilp(inst, lists);
  IlpResult res = solve_ilp(ip);
  stats.nodes += res.nodes;
  stats.lp_solves += res.lp_solves;
  stats.columns = ip.num_vars();
  sol.stats = std::move(stats);
  if (res.status != IlpStatus::kOptimal) return sol;
  sol.status = NfoldStatus::kOptimal;
  std::size_t col = 0;
  for (std::size_t i = 0; i < inst.tau(); ++i) {
    for (const Config& c : lists[i].configs) {
      if (!res.values[col].is_zero()) sol.bricks.push_back({i, c, res.values[col].numerator()});
      ++col;
    }
  }
  sort_bricks(sol.bricks);
  sol.objective = total_cost(inst, sol.bricks);
  return sol;
}

// Branch and bound on the explicit N-fold program, one block per brick.
NfoldSolution solve_explicit(const HugeNfoldInstance& inst, NfoldStats stats) {
  IntegerProgram ip;
  const std::size_t r = inst.r();
  std::vector<RationalVector> link(r);
  struct Block {
    std::size_t type, first;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < inst.tau(); ++i) {
    const BrickType& tp = inst.types[i];
    for (std::int64_t q = 0; q < inst.multiplicity[i]; ++q) {
      const std::size_t first = ip.num_vars();
      blocks.push_back({i, first});
      for (std::size_t j = 0; j < tp.t(); ++j) {
        Rational w = tp.objective.linear.empty() ? Rational(0) : tp.objective.linear[j];
        ip.add_variable(std::move(w), rat(tp.lower[j]), rat(tp.upper[j]), true);
        if (!tp.objective.tables.empty() && tp.objective.tables[j]) ip.set_convex_cost(first + j, *tp.objective.tables[j]);
      }
      for (std::size_t row = 0; row < tp.e2.rows; ++row) {
        RationalVector coef(ip.num_vars());
        for (std::size_t j = 0; j < tp.t(); ++j) coef[first + j] = Rational(tp.e2.at(row, j));
        ip.base.add_row(std::move(coef), Relation::kEq, rat(tp.rhs[row]));
      }
      for (std::size_t k = 0; k < r; ++k) {
        link[k].resize(ip.num_vars());
        for (std::size_t j = 0; j < tp.t(); ++j) link[k][first + j] = Rational(tp.e1.at(k, j));
      }
    }
  }
  for (std::size_t k = 0; k < r; ++k) ip.base.add_row(std::move(link[k]), Relation::kEq, rat(inst.b0[k]));
  IlpResult res = solve_ilp(ip);
  stats.nodes += res.nodes;
  stats.lp_solves += res.lp_solves;
  NfoldSolution sol;
  sol.stats = std::move(stats);
  if (res.status != IlpStatus::kOptimal) return sol;
  sol.status = NfoldStatus::kOptimal;
  for (const Block& b : blocks) {
    Config c(inst.types[b.type].t());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = res.values[b.first + j].to_int64();
    sol.bricks.push_back({b.type, std::move(c), 1});
  }
  sort_bricks(sol.bricks);
  sol.objective = total_cost(inst, sol.bricks);
  return sol;
}

NfoldSolution solve_huge(const HugeNfoldInstance& inst, const NfoldOptions& options) {
  NfoldStats stats;
  stats.mode_used = SolveMode::kHuge;
  const ConfLpResult lp = solve_conf_lp(inst);
  if (!lp.feasible) {
    NfoldSolution sol;
    sol.stats = std::move(stats);
    return sol;
  }
  std::uint64_t s = 1, t = 1;
  mpz_class norm_e2 = 1, norm_e = 1;
  for (const BrickType& tp : inst.types) {
    s = std::max<std::uint64_t>(s, tp.e2.rows);
    t = std::max<std::uint64_t>(t, tp.t());
    norm_e2 = std::max(norm_e2, tp.e2.norm_inf());
    norm_e = std::max({norm_e, tp.e2.norm_inf(), tp.e1.norm_inf()});
  }
  const mpz_class p = proximity_bound(std::max<std::uint64_t>(inst.r(), 1), s, t, inst.tau(), norm_e2, norm_e);
  stats.proximity = p;

  // Fix y₋P = max(0, ⌊y⌋ − P) bricks and solve the remainder exactly.
  HugeNfoldInstance reduced = inst;
  std::vector<BrickCount> fixed;
  for (std::size_t c = 0; c < lp.columns.size(); ++c) {
    const mpz_class keep = lp.y[c].floor_z() - p;
    if (keep <= 0) continue;
    const ConfLpColumn& col = lp.columns[c];
    const std::int64_t n = small(keep, "fixed brick count");
    reduced.multiplicity[col.type] -= n;
    const Config image = inst.types[col.type].link(col.config);
    for (std::size_t k = 0; k < inst.r(); ++k) {
      reduced.b0[k] = checked(static_cast<__int128>(reduced.b0[k]) - static_cast<__int128>(n) * image[k]);
    }
    fixed.push_back({col.type, col.config, keep});
  }
  mpz_class left = 0;
  for (std::int64_t m : reduced.multiplicity) left += static_cast<long>(m);
  stats.reduced_bricks = left;
  stats.columns = lp.columns.size();

  NfoldSolution sol;
  try {
    std::vector<ConfigurationList> lists = linking_lists(reduced, options.conf_cap, stats);
    sol = solve_with_lists(reduced, lists, stats);
  } catch (const CapacityError&) {
    if (left > static_cast<unsigned long>(options.explicit_brick_limit)) {
      throw CapacityError("reduced instance still has " + left.get_str() +
                          " bricks and too many configurations for exact branch and bound");
    }
    sol = solve_explicit(reduced, stats);
  }
  sol.stats.columns = lp.columns.size();
  if (sol.status != NfoldStatus::kOptimal) return sol;
  for (BrickCount& b : fixed) sol.bricks.push_back(std::move(b));
  sort_bricks(sol.bricks);
  sol.objective = total_cost(inst, sol.bricks);
  return sol;
}

}  // namespace

NfoldSolution reduce_and_solve(const HugeNfoldInstance& inst, const NfoldOptions& options) {
  inst.validate();
  if (options.mode == SolveMode::kHuge) return solve_huge(inst, options);
  NfoldStats stats;
  stats.mode_used = SolveMode::kDirect;
  std::vector<ConfigurationList> lists;
  try {
    lists = linking_lists(inst, options.conf_cap, stats);
  } catch (const CapacityError&) {
    if (options.mode == SolveMode::kDirect) throw;
    return solve_huge(inst, options);
  }
  return solve_with_lists(inst, lists, std::move(stats));
}

std::vector<std::string> check_nfold_solution(const HugeNfoldInstance& inst, const NfoldSolution& sol) {
  std::vector<std::string> v;
  if (sol.status != NfoldStatus::kOptimal) return v;
  std::vector<mpz_class> count(inst.tau());
  std::vector<mpz_class> sum(inst.r());
  for (const BrickCount& b : sol.bricks) {
    if (b.type >= inst.tau()) {
      v.push_back("brick type out of range");
      continue;
    }
    if (b.count <= 0) v.push_back("non-positive brick count");
    if (!inst.types[b.type].contains(b.config)) v.push_back("configuration outside brick polytope of type " + std::to_string(b.type));
    count[b.type] += b.count;
    const Config image = inst.types[b.type].link(b.config);
    for (std::size_t k = 0; k < inst.r(); ++k) sum[k] += b.count * mpz_class(static_cast<long>(image[k]));
  }
  for (std::size_t i = 0; i < inst.tau(); ++i) {
    if (count[i] != static_cast<long>(inst.multiplicity[i])) v.push_back("type " + std::to_string(i) + " count differs from its multiplicity");
  }
  for (std::size_t k = 0; k < inst.r(); ++k) {
    if (sum[k] != static_cast<long>(inst.b0[k])) v.push_back("linking row " + std::to_string(k) + " is violated");
  }
  if (total_cost(inst, sol.bricks) != sol.objective) v.push_back("reported objective differs from the brick costs");
  return v;
}

HugeNfoldInstance mimo_to_nfold(const MimoInstance& mimo, ReductionReport* report) {
  const std::size_t d = mimo.d;
  if (mimo.target.size() != d) throw InputError("target length differs from d");
  struct Prepared {
    Config lo, hi;
    std::vector<std::size_t> rows;  // kept (non-singleton) rows
    bool empty = false;
  };
  std::vector<Prepared> prep(mimo.types.size());
  std::size_t aux_max = 0, rows_max = 0, m_max = 0;
  for (std::size_t i = 0; i < mimo.types.size(); ++i) {
    const MimoType& tp = mimo.types[i];
    aux_max = std::max(aux_max, tp.aux);
    m_max = std::max(m_max, tp.a.rows);
    auto box = element_box(tp, d);
    Prepared& p = prep[i];
    if (!box) {
      p.empty = true;
      p.lo.assign(d + tp.aux, 0);
      p.hi.assign(d + tp.aux, 0);
      rows_max = std::max<std::size_t>(rows_max, 1);
      continue;
    }
    p.lo = box->first;
    p.hi = box->second;
    for (std::size_t row = 0; row < tp.a.rows; ++row) {
      std::size_t nz = 0;
      for (std::size_t j = 0; j < tp.a.cols; ++j) nz += tp.a.at(row, j) != 0;
      if (nz != 1) p.rows.push_back(row);
    }
    rows_max = std::max(rows_max, p.rows.size());
  }
  const std::size_t t = d + aux_max + rows_max;

  HugeNfoldInstance out;
  out.b0 = mimo.target;
  for (std::size_t i = 0; i < mimo.types.size(); ++i) {
    const MimoType& tp = mimo.types[i];
    const Prepared& p = prep[i];
    BrickType b;
    b.e1 = IntegerMatrix(d, t);
    for (std::size_t k = 0; k < d; ++k) b.e1.at(k, k) = 1;
    b.e2 = IntegerMatrix(rows_max, t);
    b.rhs.assign(rows_max, 0);
    b.lower.assign(t, 0);
    b.upper.assign(t, 0);
    for (std::size_t j = 0; j < d + tp.aux; ++j) {
      b.lower[j] = p.lo[j];
      b.upper[j] = p.hi[j];
    }
    if (p.empty) {
      // 0 + slack = −1 with slack ∈ [0,0]: no integer point.
      b.rhs[0] = -1;
      b.e2.at(0, d + aux_max) = 1;
    }
    for (std::size_t k = 0; k < p.rows.size(); ++k) {
      const std::size_t row = p.rows[k];
      const std::size_t slack = d + aux_max + k;
      __int128 least = 0;
      for (std::size_t j = 0; j < d + tp.aux; ++j) {
        const std::int64_t a = small(tp.a.at(row, j), "constraint coefficient");
        b.e2.at(k, j) = static_cast<long>(a);
        least += std::min(static_cast<__int128>(a) * p.lo[j], static_cast<__int128>(a) * p.hi[j]);
      }
      b.e2.at(k, slack) = 1;
      b.rhs[k] = tp.b[row];
      b.upper[slack] = checked(std::max<__int128>(0, static_cast<__int128>(tp.b[row]) - least));
    }
    // Objective terms: coefficients add up, tables add up over the box.
    b.objective.linear.assign(t, Rational(0));
    b.objective.tables.assign(t, std::nullopt);
    for (const MimoObjectiveTerm& term : tp.objective) {
      if (term.coordinates.size() != 1) throw InputError("cross terms are not separable");
      const std::size_t j = term.coordinates[0];
      if (j >= d + tp.aux) throw InputError("objective term coordinate out of range");
            if (term.linear) b.objective.linear[j] += *term.linear;
      if (!term.table) continue;
      const std::int64_t from = b.lower[j] - term.table_lower;
      const std::int64_t to = b.upper[j] - term.table_lower;
      if (from < 0 || to >= static_cast<std::int64_t>(term.table->size())) {
        throw InputError("objective table of type " + std::to_string(i) + " does not cover coordinate " +
                         std::to_string(j) + " over [" + std::to_string(b.lower[j]) + ", " +
                         std::to_string(b.upper[j]) + "]");
      }
      RationalVector slice(term.table->begin() + from, term.table->begin() + to + 1);
      if (!b.objective.tables[j]) {
        b.objective.tables[j] = std::move(slice);
      } else {
        for (std::size_t k = 0; k < slice.size(); ++k) (*b.objective.tables[j])[k] += slice[k];
      }
    }
    if (!b.objective.has_tables()) b.objective.tables.clear();
    out.types.push_back(std::move(b));
    out.multiplicity.push_back(tp.multiplicity);
  }
  if (report) {
    report->r = d;
    report->t = t;
    report->s = rows_max;
    report->s_lemma = 2 * m_max;
    report->m_rows = m_max;
    report->d_aux = aux_max;
  }
  return out;
}

}  // namespace hmo

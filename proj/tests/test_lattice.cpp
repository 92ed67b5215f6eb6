#include <random>
#include <set>

#include "doctest.h"
#include "hmo/errors.hpp"
#include "hmo/lattice.hpp"
#include "lattice_oracles.hpp"

using hmo::IntegerMatrix;
using hmo::IntVector;
using hmo::to_int_vector;

namespace {

std::set<oracle::Vec> as_set(const hmo::GraverBasis& g) {
  std::set<oracle::Vec> s;
  for (const IntVector& e : g.elements) {
    oracle::Vec v;
    for (const mpz_class& c : e) v.push_back(c.get_si());
    s.insert(v);
  }
  return s;
}

IntegerMatrix matrix_2x3(int code) {
  std::vector<std::vector<long long>> rows(2, std::vector<long long>(3));
  for (int k = 0; k < 6; ++k) {
    rows[k / 3][k % 3] = code % 3 - 1;
    code /= 3;
  }
  return IntegerMatrix::from_rows(rows);
}

}  // namespace

TEST_CASE("conformal order") {
  CHECK(hmo::conformal_leq(to_int_vector({1, -1}), to_int_vector({2, -3})));
  CHECK_FALSE(hmo::conformal_leq(to_int_vector({1, 1}), to_int_vector({2, -3})));
  CHECK(hmo::conformal_leq(to_int_vector({0, 0}), to_int_vector({-5, 7})));
  CHECK_FALSE(hmo::conformal_leq(to_int_vector({3, 0}), to_int_vector({2, 0})));
  CHECK_THROWS_AS(hmo::conformal_leq(to_int_vector({1}), to_int_vector({1, 2})), hmo::InputError);
}

TEST_CASE("graver basis reference examples") {
  auto ones = IntegerMatrix::from_rows({{1, 1}});
  CHECK(as_set(hmo::graver_basis(ones, 3)) == std::set<oracle::Vec>{{1, -1}, {-1, 1}});
  auto one_two = IntegerMatrix::from_rows({{1, 2}});
  CHECK(as_set(hmo::graver_basis(one_two, hmo::graver_norm_bound(one_two))) ==
        std::set<oracle::Vec>{{2, -1}, {-2, 1}});
  auto zero = IntegerMatrix::from_rows({{0}});
  CHECK(as_set(hmo::graver_basis(zero, 1)) == std::set<oracle::Vec>{{1}, {-1}});
  CHECK(hmo::graver_norm_bound(ones) == 3);
  CHECK(hmo::graver_norm_bound(one_two) == 10);
  CHECK_THROWS_AS(hmo::graver_basis(one_two, 2), hmo::InputError);
  CHECK_NOTHROW(hmo::graver_basis(one_two, 2, true));
}

TEST_CASE("graver basis equals the brute-force minimal kernel scan on sampled 2x3 matrices") {
  for (int code = 0; code < 729; code += 13) {
    IntegerMatrix a = matrix_2x3(code);
    const long long cap = hmo::graver_norm_bound(a).get_si();
    std::vector<oracle::Vec> rows = {{a.at(0, 0).get_si(), a.at(0, 1).get_si(), a.at(0, 2).get_si()},
                                     {a.at(1, 0).get_si(), a.at(1, 1).get_si(), a.at(1, 2).get_si()}};
    auto kernel = oracle::kernel_box(rows, 3, cap);
    auto expected = oracle::minimal_elements(kernel);
    auto got = as_set(hmo::graver_basis(a, mpz_class(static_cast<long>(cap))));
    REQUIRE(got == expected);
    auto circ = oracle::circuits(kernel);
    for (const auto& c : circ) REQUIRE(got.count(c) == 1);
  }
}

TEST_CASE("positive sum decomposition") {
  auto ones = IntegerMatrix::from_rows({{1, 1}});
  auto d = hmo::positive_sum_decompose(ones, to_int_vector({3, -3}));
  REQUIRE(d.size() == 1);
  CHECK(d[0].element == to_int_vector({1, -1}));
  CHECK(d[0].coefficient == 3);

  auto one_two = IntegerMatrix::from_rows({{1, 2}});
  d = hmo::positive_sum_decompose(one_two, to_int_vector({4, -2}));
  REQUIRE(d.size() == 1);
  CHECK(d[0].element == to_int_vector({2, -1}));
  CHECK(d[0].coefficient == 2);

  CHECK(hmo::positive_sum_decompose(ones, to_int_vector({0, 0})).empty());
  CHECK_THROWS_AS(hmo::positive_sum_decompose(ones, to_int_vector({1, 1})), hmo::InputError);
}

TEST_CASE("random kernel vectors decompose conformally within 2n-2 terms") {
  std::mt19937_64 rng(29);
  int done = 0;
  for (int it = 0; done < 60 && it < 1000; ++it) {
    IntegerMatrix a = matrix_2x3(static_cast<int>(rng() % 729));
    auto basis = hmo::graver_basis(a, hmo::graver_norm_bound(a));
    if (basis.elements.empty()) continue;
    IntVector x(3);
    for (int k = 0; k < 3; ++k) {
      const auto& g = basis.elements[rng() % basis.elements.size()];
      const long mult = static_cast<long>(1 + rng() % 4);
      for (int i = 0; i < 3; ++i) x[i] += mult * g[i];
    }
    auto terms = hmo::positive_sum_decompose(basis, x);
    REQUIRE(terms.size() <= 4);
    IntVector sum(3);
    for (const auto& t : terms) {
      REQUIRE(t.coefficient > 0);
      REQUIRE(hmo::conformal_leq(t.element, x));
      REQUIRE(std::find(basis.elements.begin(), basis.elements.end(), t.element) != basis.elements.end());
      for (int i = 0; i < 3; ++i) sum[i] += t.coefficient * t.element[i];
    }
    REQUIRE(sum == x);
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("egyptian fractions follow the binary construction") {
  CHECK(hmo::egyptian_fraction(3, 4) == std::vector<mpz_class>{2, 4});
  CHECK(hmo::egyptian_fraction(1, 7) == std::vector<mpz_class>{7});
  CHECK(hmo::egyptian_fraction(1, 1) == std::vector<mpz_class>{1});
  CHECK(hmo::egyptian_fraction(5, 5) == std::vector<mpz_class>{1});
  CHECK_THROWS_AS(hmo::egyptian_fraction(5, 4), hmo::InputError);
  CHECK_THROWS_AS(hmo::egyptian_fraction(0, 4), hmo::InputError);
  for (long q = 1; q <= 128; ++q) {
    for (long p = 1; p <= q; ++p) {
      auto dens = hmo::egyptian_fraction(p, q);
      mpq_class sum = 0;
      for (const auto& d : dens) sum += mpq_class(1, d);
      mpq_class want(p, q);
      want.canonicalize();
      REQUIRE(sum == want);
      REQUIRE(std::adjacent_find(dens.begin(), dens.end()) == dens.end());
      REQUIRE(dens.back() <= q * q);
      // ⌊2 log₂ q⌋ is the largest e with 2^e ≤ q².
      long e = 0;
      while ((1L << (e + 1)) <= q * q) ++e;
      REQUIRE(static_cast<long>(dens.size()) <= e + 1);
    }
  }
}

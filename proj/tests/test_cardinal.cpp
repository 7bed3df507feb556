#include <doctest.h>

#include <limits>

#include "cardinal/bareiss.hpp"
#include "cardinal/cardinal_matrices.hpp"
#include "oracles.hpp"

using namespace cardinal;

namespace {

IntMatrix floor_matrix(std::int64_t n) {
  const auto s_n = oracle::approximate_divisors(n);
  const auto s = static_cast<Index>(s_n.size());
  IntMatrix u(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      u(i, j) = n / (s_n[static_cast<std::size_t>(i)] * s_n[static_cast<std::size_t>(j)]);
  return u;
}

}  // namespace

TEST_SUITE("cardinal") {
  TEST_CASE("T and its inverse") {
    for (Index s = 1; s <= 30; ++s) {
      const IntMatrix t = t_matrix<BigInt>(s);
      REQUIRE(is_symmetric(t));
      REQUIRE(is_skew_upper_triangular(t));
      REQUIRE(has_unit_antidiagonal(t));
      REQUIRE(oracle::naive_product(t, t_inverse<BigInt>(s)) == identity<BigInt>(s));
    }
    CHECK(t_matrix<BigInt>(1) == oracle::int_table({{1}}));
    CHECK(t_inverse<BigInt>(2) == oracle::int_table({{0, 1}, {1, -1}}));
    CHECK_THROWS_AS(t_matrix<BigInt>(0), std::invalid_argument);
  }

  TEST_CASE("U is the floor matrix and equals T Z") {
    for (std::int64_t n = 1; n <= 400; ++n) {
      const DivisorSet d(n);
      const IntMatrix u = u_matrix(d);
      CAPTURE(n);
      REQUIRE(u == floor_matrix(n));
      REQUIRE(is_symmetric(u));
      REQUIRE(is_skew_upper_triangular(u));
      REQUIRE(has_unit_antidiagonal(u));
      if (n <= 120) REQUIRE(u == oracle::naive_product(t_matrix<BigInt>(d.size()), zeta_matrix(d)));
    }
  }

  TEST_CASE("U is unimodular and its inverse is exact") {
    for (std::int64_t n = 1; n <= 250; ++n) {
      const DivisorSet d(n);
      const IntMatrix u = u_matrix(d);
      const UnimodularInverse inv = invert_u(d);
      CAPTURE(n);
      REQUIRE((inv.determinant == 1 || inv.determinant == -1));
      REQUIRE(oracle::naive_product(u, inv.inverse) == identity<BigInt>(d.size()));
      // Determinant from an independent rational elimination.
      REQUIRE(oracle::gauss_determinant(to_rational(u)) == Rational(inv.determinant));
    }
  }

  TEST_CASE("Bareiss agrees with rational Gauss-Jordan on random matrices") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 60; ++trial) {
      const Index s = 1 + trial % 9;
      IntMatrix a(s, s);
      for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j) a(i, j) = entry(rng);
      if (trial % 10 == 0 && s > 1) a.row(s - 1) = a.row(0);  // force some singular cases
      const auto reference = oracle::gauss_inverse(to_rational(a));
      const ExactInverse<BigInt> exact = bareiss_inverse(a);
      CAPTURE(trial);
      if (!reference) {
        REQUIRE_FALSE(exact.invertible());
        REQUIRE(bareiss_determinant(a) == 0);
        continue;
      }
      REQUIRE(Rational(exact.determinant) == reference->determinant);
      REQUIRE(to_rational(exact.adjugate) == reference->inverse * Rational(exact.determinant));
      const ExactInverse<Rational> over_q = bareiss_inverse(to_rational(a));
      REQUIRE(over_q.inverse() == reference->inverse);
    }
  }

  TEST_CASE("Mertens matrix") {
    const auto m_oracle = oracle::mertens_prefix(400);
    for (std::int64_t n = 1; n <= 400; n += (n < 100 ? 1 : 13)) {
      const DivisorSet d(n);
      const Index s = d.size();
      IntMatrix expected = IntMatrix::Zero(s, s);
      for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j)
          expected(i, j) = m_oracle[static_cast<std::size_t>(n / (d[i] * d[j]))];
      const IntMatrix m = m_matrix(d);
      CAPTURE(n);
      REQUIRE(m == expected);
      REQUIRE(m_matrix_via_mertens(d, mertens(n)) == expected);
      REQUIRE(m == exact_product(t_matrix<BigInt>(s), mobius_matrix(d, sieve_mobius(n))));
      REQUIRE(m(0, 0) == m_oracle[static_cast<std::size_t>(n)]);
    }
    CHECK_THROWS_AS(m_matrix_via_mertens(DivisorSet(50), mertens(10)), std::invalid_argument);
  }

  TEST_CASE("degenerate n = 1") {
    const DivisorSet d(1);
    CHECK(u_matrix(d) == oracle::int_table({{1}}));
    CHECK(u_inverse(d) == oracle::int_table({{1}}));
    CHECK(m_matrix(d) == oracle::int_table({{1}}));
    CHECK(invert_u(d).determinant == 1);
  }

  TEST_CASE("floor commutation") {
    for (std::int64_t n = 1; n <= 80; ++n)
      for (std::int64_t i = 1; i <= 80; ++i)
        for (std::int64_t j = 1; j <= 80; ++j) REQUIRE(check_floor_commutation(n, i, j));
    const std::int64_t top = std::numeric_limits<std::int64_t>::max();
    CHECK(check_floor_commutation(top, 1LL << 32, 1LL << 32));
    CHECK(check_floor_commutation(top, 3037000499, 3037000499));
    CHECK(check_floor_commutation(top, 1, top));
    CHECK_THROWS_AS(check_floor_commutation(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_floor_commutation(5, 0, 1), std::invalid_argument);
  }

  TEST_CASE("T rho(k) is symmetric") {
    for (std::int64_t n = 1; n <= 120; ++n) {
      const DivisorSet d(n);
      REQUIRE(verify_t_symmetrization(d).passed);
      if (n % 10 == 0)
        for (std::int64_t k : d.elements())
          REQUIRE(is_symmetric(oracle::naive_product(t_matrix<BigInt>(d.size()), rho(d, k))));
    }
    for (std::int64_t n = 121; n <= 500; ++n) REQUIRE(verify_t_symmetrization(DivisorSet(n)).passed);
  }
}

#include <doctest.h>

#include "cardinal/cardinal_matrices.hpp"
#include "cardinal/deformed.hpp"
#include "oracles.hpp"

using namespace cardinal;

namespace {

RatMatrix direct_u_tilde(std::int64_t n, bool full) {
  const auto s_n = oracle::approximate_divisors(n);
  const auto s = static_cast<Index>(s_n.size());
  RatMatrix a = RatMatrix::Zero(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      if (full || i + j <= s - 1)
        a(i, j) = Rational(BigInt(n), BigInt(s_n[static_cast<std::size_t>(i)] * s_n[static_cast<std::size_t>(j)]));
  return a;
}

// (x - 4)^2 <= 8 with x >= 4, i.e. x <= 4 + 2 sqrt 2, decided exactly.
bool at_most_four_plus_two_root_two(const Rational& x) {
  const Rational y = x - 4;
  return y <= 0 || y * y <= 8;
}

}  // namespace

TEST_SUITE("deformed") {
  TEST_CASE("U~ and U~+ entries") {
    for (std::int64_t n = 1; n <= 200; ++n) {
      const DivisorSet d(n);
      const RatMatrix ut = u_tilde(d);
      CAPTURE(n);
      REQUIRE(ut == direct_u_tilde(n, false));
      REQUIRE(u_tilde_plus(d) == direct_u_tilde(n, true));
      REQUIRE(floor_of(ut) == u_matrix(d));
      REQUIRE(is_symmetric(ut));
      for (Index i = 0; i < d.size(); ++i)
        for (Index j = 0; j < d.size(); ++j) REQUIRE(ut(i, j) >= Rational(u_matrix(d)(i, j)));
    }
  }

  TEST_CASE("closed-form inverse equals the eliminated inverse") {
    for (std::int64_t n = 1; n <= 200; n += (n < 60 ? 1 : 9)) {
      const DivisorSet d(n);
      const auto reference = oracle::gauss_inverse(u_tilde(d));
      REQUIRE(reference.has_value());
      CAPTURE(n);
      REQUIRE(u_tilde_inverse(d) == reference->inverse);
      REQUIRE(u_tilde_determinant(d) == reference->determinant);
      REQUIRE(verify_u_tilde_inverse(d).passed);
    }
  }

  TEST_CASE("inverse band bounds") {
    const Rational one(1);
    for (std::int64_t n = 1; n <= 2000; ++n) {
      const DivisorSet d(n);
      const RatMatrix inv = u_tilde_inverse(d);
      const Index s = d.size();
      for (Index i = 0; i < s; ++i) {
        const Rational& anti = inv(i, s - 1 - i);
        REQUIRE(anti > 0);
        REQUIRE(anti <= one);
        if (i > 0) {
          const Rational& below = inv(i, s - i);
          REQUIRE(below < 0);
          REQUIRE(at_most_four_plus_two_root_two(-below));
        }
      }
    }
  }

  TEST_CASE("deformed Mertens matrix") {
    for (std::int64_t n = 1; n <= 300; n += (n < 50 ? 1 : 11)) {
      const DivisorSet d(n);
      const RatMatrix t = to_rational(t_matrix<BigInt>(d.size()));
      const auto reference = oracle::gauss_inverse(u_tilde(d));
      const RatMatrix expected = oracle::naive_product(oracle::naive_product(t, reference->inverse), t);
      const RatMatrix mt = m_tilde(d);
      CAPTURE(n);
      REQUIRE(mt == expected);
      REQUIRE(is_symmetric(mt));
      const ScaledMatrix scaled = m_tilde_scaled(d);
      for (Index i = 0; i < d.size(); ++i)
        for (Index j = 0; j < d.size(); ++j) REQUIRE(Rational(scaled(i, j)) == mt(i, j) * n);
    }
  }

  TEST_CASE("difference matrices") {
    for (std::int64_t n = 1; n <= 150; n += 3) {
      const DivisorSet d(n);
      const DifferenceMatrices diff = difference_matrices(d);
      const RatMatrix u = to_rational(u_matrix(d));
      CAPTURE(n);
      REQUIRE(diff.e == u_tilde(d) - u);
      REQUIRE(diff.e_plus == u_tilde_plus(d) - u_tilde(d));
      REQUIRE(diff.e_tilde == u_tilde_plus(d) - u);
      REQUIRE(diff.e_tilde == diff.e + diff.e_plus);
      REQUIRE(oracle::gauss_determinant(diff.e) == 0);
      REQUIRE((diff.e.row(d.size() - 1).array() == Rational(0)).all());
      for (Index i = 0; i < d.size(); ++i)
        for (Index j = 0; j < d.size(); ++j) {
          REQUIRE(diff.e(i, j) >= 0);
          REQUIRE(diff.e(i, j) < 1);
        }
    }
  }

  TEST_CASE("rank one") {
    for (std::int64_t n : {1LL, 2LL, 16LL, 100LL, 5000LL}) {
      const DivisorSet d(n);
      CAPTURE(n);
      REQUIRE(verify_rank_one(u_tilde_plus(d)).passed);
      if (d.size() <= 64) REQUIRE(exact_rank(u_tilde_plus(d)) == 1);
      if (d.size() >= 2) REQUIRE_FALSE(verify_rank_one(u_tilde(d)).passed);
    }
    CHECK(exact_rank(RatMatrix::Zero(3, 3)) == 0);
    CHECK(exact_rank(RatMatrix::Identity(4, 4)) == 4);
    // s > 64 takes the sampled-minor path.
    CHECK(verify_rank_one(u_tilde_plus(DivisorSet(2000))).passed);
    CHECK_FALSE(verify_rank_one(to_rational(u_matrix(DivisorSet(2000)))).passed);
  }

  TEST_CASE("Z~ and W") {
    for (std::int64_t n = 1; n <= 400; n += 7) {
      const DivisorSet d(n);
      const ZTildeW zw = z_tilde_and_w(d);
      const RatMatrix t = to_rational(t_matrix<BigInt>(d.size()));
      CAPTURE(n);
      REQUIRE(is_lower_triangular(zw.z_tilde));
      REQUIRE(oracle::naive_product(t, zw.z_tilde) == u_tilde(d));
      REQUIRE(zw.w == zw.z_tilde - to_rational(zeta_matrix(d)));
      const RatMatrix e = difference_matrices(d).e;
      for (Index j = 0; j < d.size(); ++j) {
        Rational column(0);
        for (Index i = 0; i < d.size(); ++i) {
          REQUIRE(zw.w(i, j) > -1);
          REQUIRE(zw.w(i, j) < 1);
          column += zw.w(i, j);
        }
        REQUIRE(column == e(0, j));
      }
    }
  }
}

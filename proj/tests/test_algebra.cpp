#include <doctest.h>

#include <limits>
#include <random>

#include "cardinal/algebra.hpp"
#include "oracles.hpp"

using namespace cardinal;

namespace {

std::vector<std::int64_t> random_coeffs(std::int64_t len, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::int64_t> a(static_cast<std::size_t>(len));
  for (auto& x : a) x = dist(rng);
  return a;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("generators match the block definition") {
    for (std::int64_t n = 1; n <= 150; ++n) {
      const DivisorSet d(n);
      for (std::int64_t k : d.elements()) {
        CAPTURE(n);
        CAPTURE(k);
        const IntMatrix r = rho(d, k);
        REQUIRE(first_mismatch(r, oracle::rho(n, k)) == std::nullopt);
        if (k == 1) REQUIRE(r == identity<BigInt>(d.size()));
        else REQUIRE(is_strictly_lower_triangular(r));
      }
    }
  }

  TEST_CASE("generator outside S_n is rejected") {
    const DivisorSet d(16);
    CHECK_THROWS_AS(rho(d, 6), std::out_of_range);
    CHECK_THROWS_AS(rho_action(d, 0), std::out_of_range);
  }

  TEST_CASE("action composition equals the dense product") {
    for (std::int64_t n : {16LL, 60LL, 97LL}) {
      const DivisorSet d(n);
      for (std::int64_t a : d.elements())
        for (std::int64_t b : d.elements()) {
          const IntMatrix dense = oracle::naive_product(rho(d, a), rho(d, b));
          REQUIRE(rho_action(d, a).after(rho_action(d, b)).to_matrix() == dense);
        }
    }
    GeneratorAction small;
    small.target.resize(2);
    CHECK_THROWS_AS(small.after(rho_action(DivisorSet(16), 2)), std::invalid_argument);
  }

  TEST_CASE("generators commute, dense check") {
    for (std::int64_t n = 1; n <= 40; ++n) {
      const DivisorSet d(n);
      for (std::int64_t a : d.elements())
        for (std::int64_t b : d.elements())
          REQUIRE(oracle::naive_product(rho(d, a), rho(d, b)) == oracle::naive_product(rho(d, b), rho(d, a)));
    }
  }

  TEST_CASE("commutativity via actions") {
    for (std::int64_t n = 1; n <= 300; ++n) REQUIRE(verify_commutativity(DivisorSet(n)).passed);
  }

  TEST_CASE("image of a series, three ways") {
    std::mt19937_64 rng(7);
    for (std::int64_t n = 1; n <= 90; ++n) {
      const DivisorSet d(n);
      const auto a = random_coeffs(n, rng, -5, 5);
      const CoeffVector c{a};
      const IntMatrix direct = hom_image(d, c);
      REQUIRE(direct == hom_image_by_generators(d, c));
      REQUIRE(direct == oracle::image(n, a));
    }
  }

  TEST_CASE("zeta and Moebius images are inverse") {
    for (std::int64_t n = 1; n <= 400; n += 7) {
      const DivisorSet d(n);
      const IntMatrix z = zeta_matrix(d);
      const IntMatrix zi = mobius_matrix(d, sieve_mobius(n));
      REQUIRE(exact_product(z, zi) == identity<BigInt>(d.size()));
      REQUIRE(is_lower_triangular(z));
    }
    CHECK_THROWS_AS(mobius_matrix(DivisorSet(20), sieve_mobius(10)), std::invalid_argument);
  }

  TEST_CASE("Dirichlet convolution") {
    const CoeffVector ones = CoeffVector::ones(12);
    const CoeffVector d = dirichlet_convolve(ones, ones);
    CHECK(d(12) == 6);
    CHECK(d(1) == 1);
    CHECK(d(7) == 2);
    CHECK(dirichlet_convolve(ones, CoeffVector::mobius(sieve_mobius(12))) == CoeffVector::unit(12));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_coeffs(200, rng, -9, 9);
      const auto b = random_coeffs(200, rng, -9, 9);
      REQUIRE(dirichlet_convolve(CoeffVector{a}, CoeffVector{b}).a == oracle::dirichlet(a, b));
    }

    CHECK_THROWS_AS(dirichlet_convolve(CoeffVector::ones(3), CoeffVector::ones(4)), std::invalid_argument);
    CoeffVector big = CoeffVector::ones(4);
    big(1) = std::numeric_limits<std::int64_t>::max();
    CoeffVector two = CoeffVector::ones(4);
    two(1) = 2;
    CHECK_THROWS_AS(dirichlet_convolve(big, two), std::overflow_error);
  }

  TEST_CASE("homomorphism on random sign vectors") {
    std::mt19937_64 rng(2024);
    for (std::int64_t n : {1LL, 16LL, 60LL, 210LL}) {
      const DivisorSet d(n);
      for (int trial = 0; trial < 10; ++trial) {
        const CoeffVector a = random_sign_coeffs(n, rng);
        const CoeffVector b = random_sign_coeffs(n, rng);
        REQUIRE(verify_homomorphism(d, a, b).passed);
        // Cross-check against the independent image oracle.
        const IntMatrix lhs = oracle::image(n, oracle::dirichlet(a.a, b.a));
        REQUIRE(lhs == oracle::naive_product(oracle::image(n, a.a), oracle::image(n, b.a)));
      }
    }
    CHECK_THROWS_AS(verify_homomorphism(DivisorSet(10), CoeffVector::ones(5), CoeffVector::ones(10)),
                    std::invalid_argument);
  }

  TEST_CASE("random sign vectors are reproducible") {
    std::mt19937_64 a(5), b(5);
    const CoeffVector x = random_sign_coeffs(64, a);
    CHECK(x == random_sign_coeffs(64, b));
    for (auto v : x.a) CHECK((v == 1 || v == -1));
  }

  TEST_CASE("a broken identity is reported with its location") {
    const DivisorSet d(16);
    const IntMatrix a = rho(d, 2);
    IntMatrix b = a;
    b(5, 2) = 7;
    const auto at = first_mismatch(a, b);
    REQUIRE(at.has_value());
    CHECK(at->row == 5);
    CHECK(at->col == 2);
    CHECK(describe(*at) == "(6,3)");
  }
}

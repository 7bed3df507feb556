#include "cardinal/deformed.hpp"

#include <random>
#include <string>

#include "cardinal/cardinal_matrices.hpp"

namespace cardinal {

namespace {

Rational ratio(std::int64_t n, std::int64_t ki, std::int64_t kj) {
  return Rational(BigInt(n), BigInt(ki) * kj);
}

}  // namespace

RatMatrix u_tilde(const DivisorSet& divisors) {
  const Index s = divisors.size();
  RatMatrix u = RatMatrix::Zero(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s - i; ++j) u(i, j) = ratio(divisors.n(), divisors[i], divisors[j]);
  return u;
}

RatMatrix u_tilde_plus(const DivisorSet& divisors) {
  const Index s = divisors.size();
  RatMatrix u(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j) u(i, j) = ratio(divisors.n(), divisors[i], divisors[j]);
  return u;
}

RatMatrix u_tilde_inverse(const DivisorSet& divisors) {
  const Index s = divisors.size();
  const BigInt n(divisors.n());
  RatMatrix inv = RatMatrix::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    const Index j = s - 1 - i;
    inv(i, j) = Rational(BigInt(divisors[i]) * divisors[j], n);
    if (j + 1 < s) inv(i, j + 1) = Rational(BigInt(-divisors[i]) * divisors[j + 1], n);
  }
  return inv;
}

CheckReport verify_u_tilde_inverse(const DivisorSet& divisors) {
  const RatMatrix product = exact_product(u_tilde(divisors), u_tilde_inverse(divisors));
  CheckReport report;
  if (auto at = first_mismatch(product, identity<Rational>(divisors.size()))) {
    report.passed = false;
    report.first_failure = at;
    report.detail = "U~ times the closed-form inverse differs from I at " + describe(*at);
  }
  return report;
}

RatMatrix m_tilde(const DivisorSet& divisors) {
  const RatMatrix t = t_matrix<Rational>(divisors.size());
  return exact_product(exact_product(t, u_tilde_inverse(divisors)), t);
}

ScaledMatrix m_tilde_scaled(const DivisorSet& divisors) {
  const Index s = divisors.size();
  ScaledMatrix band = ScaledMatrix::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    const Index j = s - 1 - i;
    band(i, j) = divisors[i] * divisors[j];
    if (j + 1 < s) band(i, j + 1) = -divisors[i] * divisors[j + 1];
  }
  return t_sandwich(band);
}

Rational u_tilde_determinant(const DivisorSet& divisors) {
  const Index s = divisors.size();
  Rational det(1);
  for (Index i = 0; i < s; ++i) det *= ratio(divisors.n(), divisors[i], divisors[s - 1 - i]);
  if ((s * (s - 1) / 2) % 2 != 0) det = -det;
  return det;
}

DifferenceMatrices difference_matrices(const DivisorSet& divisors) {
  const RatMatrix ut = u_tilde(divisors);
  const RatMatrix up = u_tilde_plus(divisors);
  const RatMatrix u = to_rational(u_matrix(divisors));
  return {ut - u, up - ut, up - u};
}

ZTildeW z_tilde_and_w(const DivisorSet& divisors) {
  const RatMatrix z_tilde = exact_product(t_inverse<Rational>(divisors.size()), u_tilde(divisors));
  const RatMatrix w = z_tilde - to_rational(zeta_matrix(divisors));
  return {z_tilde, w};
}

Index exact_rank(RatMatrix a) {
  Index rank = 0;
  for (Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Index pivot = rank;
    while (pivot < a.rows() && is_zero<Rational>(a(pivot, col))) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(rank).swap(a.row(pivot));
    for (Index i = rank + 1; i < a.rows(); ++i) {
      if (is_zero<Rational>(a(i, col))) continue;
      const Rational factor = a(i, col) / a(rank, col);
      for (Index j = col; j < a.cols(); ++j) a(i, j) -= factor * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

CheckReport verify_rank_one(const RatMatrix& a) {
  CheckReport report;
  const Index s = a.rows();
  auto minor_vanishes = [&](Index i, Index k, Index j, Index l) {
    return a(i, j) * a(k, l) == a(i, l) * a(k, j);
  };
  auto fail = [&](Index i, Index j, const std::string& why) {
    report.passed = false;
    report.first_failure = EntryLocation{i, j};
    report.detail = why;
  };
  if (s <= 64) {
    for (Index i = 0; i < s; ++i)
      for (Index k = i + 1; k < s; ++k)
        for (Index j = 0; j < s; ++j)
          for (Index l = j + 1; l < s; ++l)
            if (!minor_vanishes(i, k, j, l)) {
              fail(i, j, "nonzero 2x2 minor at rows " + std::to_string(i + 1) + "," +
                             std::to_string(k + 1) + " columns " + std::to_string(j + 1) + "," +
                             std::to_string(l + 1));
              return report;
            }
    if (const Index r = exact_rank(a); r != 1) fail(0, 0, "exact rank is " + std::to_string(r));
    return report;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Index> pick(0, s - 1);
  for (int sample = 0; sample < 4096; ++sample) {
    const Index i = pick(rng), k = pick(rng), j = pick(rng), l = pick(rng);
    if (!minor_vanishes(i, k, j, l)) {
      fail(i, j, "nonzero sampled 2x2 minor");
      return report;
    }
  }
  return report;
}

}  // namespace cardinal

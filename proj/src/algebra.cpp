#include "cardinal/algebra.hpp"

#include <stdexcept>

namespace cardinal {

IntMatrix GeneratorAction::to_matrix() const {
  const Index s = size();
  IntMatrix m = IntMatrix::Zero(s, s);
  for (Index j = 0; j < s; ++j)
    if (const auto& row = target[static_cast<std::size_t>(j)]) m(*row, j) = 1;
  return m;
}

GeneratorAction GeneratorAction::after(const GeneratorAction& other) const {
  if (size() != other.size()) throw std::invalid_argument("generator actions differ in size");
  GeneratorAction out;
  out.target.resize(target.size());
  for (std::size_t j = 0; j < target.size(); ++j)
    if (const auto& mid = other.target[j]) out.target[j] = target[static_cast<std::size_t>(*mid)];
  return out;
}

GeneratorAction rho_action(const DivisorSet& divisors, std::int64_t k) {
  divisors.position(k);
  const std::int64_t n = divisors.n();
  GeneratorAction action;
  action.target.resize(static_cast<std::size_t>(divisors.size()));
  for (Index j = 0; j < divisors.size(); ++j) {
    const std::int64_t kj = divisors[j];
    if (kj <= n / k) action.target[static_cast<std::size_t>(j)] = divisors.locate_block(kj * k);
  }
  return action;
}

IntMatrix rho(const DivisorSet& divisors, std::int64_t k) {
  return rho_action(divisors, k).to_matrix();
}

IntMatrix hom_image(const DivisorSet& divisors, const CoeffVector& coeffs) {
  const std::vector<std::int64_t> weights = block_sums(divisors, coeffs);
  const std::int64_t n = divisors.n();
  const Index s = divisors.size();
  IntMatrix image = IntMatrix::Zero(s, s);
  for (Index j = 0; j < s; ++j) {
    const std::int64_t kj = divisors[j];
    for (Index m = 0; m < s; ++m) {
      const std::int64_t km = divisors[m];
      if (km > n / kj) break;
      const std::int64_t w = weights[static_cast<std::size_t>(m)];
      if (w != 0) image(divisors.locate_block(kj * km), j) += w;
    }
  }
  return image;
}

IntMatrix hom_image_by_generators(const DivisorSet& divisors, const CoeffVector& coeffs) {
  const std::vector<std::int64_t> weights = block_sums(divisors, coeffs);
  const Index s = divisors.size();
  IntMatrix image = IntMatrix::Zero(s, s);
  for (Index m = 0; m < s; ++m)
    image += BigInt(weights[static_cast<std::size_t>(m)]) * rho(divisors, divisors[m]);
  return image;
}

IntMatrix zeta_matrix(const DivisorSet& divisors) {
  return hom_image(divisors, CoeffVector::ones(divisors.n()));
}

IntMatrix mobius_matrix(const DivisorSet& divisors, const MobiusTable& mobius) {
  if (mobius.limit() < divisors.n())
    throw std::invalid_argument("Moebius table does not cover n = " + std::to_string(divisors.n()));
  return hom_image(divisors, CoeffVector::mobius(mobius));
}

CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("Dirichlet convolution needs equal lengths, got " +
                                std::to_string(a.length()) + " and " + std::to_string(b.length()));
  const std::int64_t len = a.length();
  CoeffVector out = CoeffVector::zeros(len);
  for (std::int64_t d = 1; d <= len; ++d) {
    const std::int64_t ad = a(d);
    if (ad == 0) continue;
    for (std::int64_t q = 1; q <= len / d; ++q) {
      std::int64_t term = 0;
      if (__builtin_mul_overflow(ad, b(q), &term) ||
          __builtin_add_overflow(out(d * q), term, &out(d * q)))
        throw std::overflow_error("Dirichlet convolution coefficient exceeds 64 bits at index " +
                                  std::to_string(d * q));
    }
  }
  return out;
}

CoeffVector random_sign_coeffs(std::int64_t length, std::mt19937_64& rng) {
  CoeffVector v = CoeffVector::zeros(length);
  for (auto& x : v.a) x = (rng() & 1U) != 0 ? 1 : -1;
  return v;
}

CheckReport verify_homomorphism(const DivisorSet& divisors, const CoeffVector& a,
                                const CoeffVector& b) {
  if (a.length() < divisors.n() || b.length() < divisors.n())
    throw std::invalid_argument("coefficient vectors must cover 1..n");
  const std::int64_t n = divisors.n();
  CoeffVector ta{{a.a.begin(), a.a.begin() + n}};
  CoeffVector tb{{b.a.begin(), b.a.begin() + n}};
  const IntMatrix lhs = hom_image(divisors, dirichlet_convolve(ta, tb));
  const IntMatrix rhs = exact_product(hom_image(divisors, ta), hom_image(divisors, tb));
  CheckReport report;
  if (auto at = first_mismatch(lhs, rhs)) {
    report.passed = false;
    report.first_failure = at;
    report.detail = "image of the convolution differs from the product of images at " + describe(*at);
  }
  return report;
}

CheckReport verify_commutativity(const DivisorSet& divisors) {
  const Index s = divisors.size();
  std::vector<GeneratorAction> actions;
  actions.reserve(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) actions.push_back(rho_action(divisors, divisors[i]));
  CheckReport report;
  for (Index a = 0; a < s; ++a)
    for (Index b = a + 1; b < s; ++b) {
      const GeneratorAction ab = actions[static_cast<std::size_t>(a)].after(actions[static_cast<std::size_t>(b)]);
      const GeneratorAction ba = actions[static_cast<std::size_t>(b)].after(actions[static_cast<std::size_t>(a)]);
      if (ab == ba) continue;
      report.passed = false;
      if (auto at = first_mismatch(ab.to_matrix(), ba.to_matrix())) report.first_failure = at;
      report.detail = "rho(" + std::to_string(divisors[a]) + ") and rho(" +
                      std::to_string(divisors[b]) + ") do not commute";
      return report;
    }
  return report;
}

}  // namespace cardinal

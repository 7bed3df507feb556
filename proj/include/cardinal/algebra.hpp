#pragma once

// The commutative algebra A_n spanned by the multiplication generators
// rho_n(k), k in S_n, and its image of formal Dirichlet series.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cardinal/divisors.hpp"
#include "cardinal/mertens.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

/// Outcome of an exact identity check.
struct CheckReport {
  bool passed = true;
  std::optional<EntryLocation> first_failure;
  std::string detail;

  explicit operator bool() const { return passed; }
};

/// Column action of a generator rho_n(k). Column j has a single 1 in row
/// target[j], or is zero when target[j] is empty (k_j * k > n).
///
/// Every generator is a partial map on positions, so products of generators
/// compose as maps: (rho(a) rho(b)) e_j = rho(a) e_{b(j)}.
struct GeneratorAction {
  std::vector<std::optional<Index>> target;

  Index size() const { return static_cast<Index>(target.size()); }
  IntMatrix to_matrix() const;

  /// Action of the product (*this) * other.
  GeneratorAction after(const GeneratorAction& other) const;

  friend bool operator==(const GeneratorAction&, const GeneratorAction&) = default;
};

GeneratorAction rho_action(const DivisorSet& divisors, std::int64_t k);

/// rho_n(k): entry (i,j) is 1 exactly when k_j * k <= n and k_j * k lies in the
/// block (k_{i-1}, k_i]. Identity for k = 1, strictly lower triangular
/// otherwise. Throws std::out_of_range when k is not in S_n.
IntMatrix rho(const DivisorSet& divisors, std::int64_t k);

/// Image of a Dirichlet series: sum over m in S_n of
/// (sum of a_k over (m^-, m]) * rho_n(m). Built column by column without
/// materializing the generators.
IntMatrix hom_image(const DivisorSet& divisors, const CoeffVector& coeffs);

/// Same image, summed literally over the dense generator matrices.
IntMatrix hom_image_by_generators(const DivisorSet& divisors, const CoeffVector& coeffs);

/// Z_n, the image of the zeta series (all-ones coefficients).
IntMatrix zeta_matrix(const DivisorSet& divisors);

/// Z_n^{-1}, the image of the Moebius series.
IntMatrix mobius_matrix(const DivisorSet& divisors, const MobiusTable& mobius);

/// (a*b)_k = sum over d | k of a_d b_{k/d}. Throws std::invalid_argument on a
/// length mismatch and std::overflow_error if a coefficient leaves int64.
CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b);

/// Coefficients drawn uniformly from {-1, +1}, one generator bit per entry.
CoeffVector random_sign_coeffs(std::int64_t length, std::mt19937_64& rng);

/// hom_image(a*b) == hom_image(a) * hom_image(b), exactly.
CheckReport verify_homomorphism(const DivisorSet& divisors, const CoeffVector& a,
                                const CoeffVector& b);

/// rho(a) rho(b) == rho(b) rho(a) for every pair of generators.
CheckReport verify_commutativity(const DivisorSet& divisors);

}  // namespace cardinal

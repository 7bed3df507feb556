#pragma once

// Deformed rational matrices: U~_n = D T D with entries n/(k_i k_j) on and
// above the antidiagonal, the rank-one outer product U~+_n, the sparse inverse
// of U~_n, the deformed Mertens matrix M~_n, and the difference matrices
// comparing them with U_n and Z_n.
//
// d_i = sqrt(n)/k_i never appears on its own; every formula goes through the
// exact products d_i d_j = n/(k_i k_j).

#include <cstdint>

#include "cardinal/algebra.hpp"
#include "cardinal/divisors.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

using ScaledMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// n/(k_i k_j) where i + j <= s + 1, zero below the antidiagonal.
RatMatrix u_tilde(const DivisorSet& divisors);

/// n/(k_i k_j) everywhere. Rank one.
RatMatrix u_tilde_plus(const DivisorSet& divisors);

/// Closed-form inverse of U~_n, supported on two antidiagonals:
/// k_i k_j / n where i + j = s + 1 and -k_i k_j / n where i + j = s + 2.
RatMatrix u_tilde_inverse(const DivisorSet& divisors);

/// U~_n * u_tilde_inverse == I, exactly.
CheckReport verify_u_tilde_inverse(const DivisorSet& divisors);

/// M~_n = T U~_n^{-1} T.
RatMatrix m_tilde(const DivisorSet& divisors);

/// n * M~_n as 64-bit integers. Every entry of U~_n^{-1} is an integer over n,
/// so this is exact; used by scans where the rational form is too slow.
ScaledMatrix m_tilde_scaled(const DivisorSet& divisors);

/// det(U~_n) = (-1)^{s(s-1)/2} times the product of the antidiagonal.
Rational u_tilde_determinant(const DivisorSet& divisors);

struct DifferenceMatrices {
  RatMatrix e;        // U~ - U
  RatMatrix e_plus;   // U~+ - U~
  RatMatrix e_tilde;  // U~+ - U
};

DifferenceMatrices difference_matrices(const DivisorSet& divisors);

struct ZTildeW {
  RatMatrix z_tilde;  // T^{-1} U~, lower triangular
  RatMatrix w;        // Z~ - Z
};

ZTildeW z_tilde_and_w(const DivisorSet& divisors);

/// Every 2 x 2 minor vanishes (all of them for s <= 64, otherwise a fixed
/// deterministic sample) and exact elimination finds rank 1 for s <= 64.
CheckReport verify_rank_one(const RatMatrix& a);

/// Rank by exact Gaussian elimination over Q.
Index exact_rank(RatMatrix a);

}  // namespace cardinal

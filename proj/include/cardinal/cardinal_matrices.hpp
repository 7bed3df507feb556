#pragma once

// Cardinal's integer matrices: T, U_n = T Z_n with entries floor(n/(k_i k_j)),
// its integer inverse, and the Mertens matrix M_n = T U_n^{-1} T.

#include <cstdint>

#include "cardinal/algebra.hpp"
#include "cardinal/divisors.hpp"
#include "cardinal/mertens.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

/// Ones on and above the antidiagonal (i + j <= s + 1, 1-based), zero below.
template <typename Scalar = BigInt>
Dense<Scalar> t_matrix(Index s) {
  if (s < 1) throw std::invalid_argument("T needs size s >= 1");
  Dense<Scalar> t = Dense<Scalar>::Zero(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s - i; ++j) t(i, j) = Scalar(1);
  return t;
}

/// Ones on the antidiagonal and -1 directly below it.
template <typename Scalar = BigInt>
Dense<Scalar> t_inverse(Index s) {
  if (s < 1) throw std::invalid_argument("T needs size s >= 1");
  Dense<Scalar> t = Dense<Scalar>::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    t(i, s - 1 - i) = Scalar(1);
    if (i > 0) t(i, s - i) = Scalar(-1);
  }
  return t;
}

/// floor(n / (k_i k_j)), evaluated as floor(floor(n/k_i)/k_j) to stay in range.
IntMatrix u_matrix(const DivisorSet& divisors);

struct UnimodularInverse {
  int determinant = 0;  // +1 or -1
  IntMatrix inverse;
};

/// Exact inverse of U_n. Rows are reversed first so that the antidiagonal
/// becomes a unit diagonal and the fraction-free elimination never divides by
/// anything but 1. Throws InternalError if |det U_n| != 1.
UnimodularInverse invert_u(const DivisorSet& divisors);

inline IntMatrix u_inverse(const DivisorSet& divisors) { return invert_u(divisors).inverse; }

/// M_n = T U_n^{-1} T from the exact inverse.
IntMatrix m_matrix(const DivisorSet& divisors);

/// Same matrix from the other side: entry (i,j) = M(floor(n/(k_i k_j))), with
/// M(0) = 0 below the antidiagonal. Throws std::invalid_argument when the table
/// stops short of n.
IntMatrix m_matrix_via_mertens(const DivisorSet& divisors, const MertensTable& mertens);

/// floor(floor(n/j)/i) == floor(floor(n/i)/j) == floor(n/(i j)).
bool check_floor_commutation(std::int64_t n, std::int64_t i, std::int64_t j);

/// T rho_n(k) is symmetric for every k in S_n.
CheckReport verify_t_symmetrization(const DivisorSet& divisors);

}  // namespace cardinal

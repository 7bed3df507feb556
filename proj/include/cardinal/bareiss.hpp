#pragma once

/*
 * Fraction-free Gauss-Jordan elimination over an exact integral domain.
 *
 * Works on the augmented block [A | I]. Step k replaces every row i != k by
 *   (pivot * row_i - a_ik * row_k) / previous_pivot,
 * and every division is exact (Sylvester's identity), so integer inputs stay
 * integral. After the last step the left block is d * I and the right block is
 * d * A^{-1}, where d = +-det(A) depending on the row swaps.
 *
 * Rows whose multiplier is zero are left untouched while the pivot equals the
 * previous pivot, which makes unit-pivot (e.g. unimodular triangular) inputs
 * cost O(nonzeros) per step.
 */

#include <stdexcept>
#include <type_traits>
#include <utility>

#include "cardinal/types.hpp"

namespace cardinal {

template <typename Scalar>
struct ExactInverse {
  Scalar determinant{0};
  /// adj(A) = det(A) * A^{-1}. Empty when A is singular.
  Dense<Scalar> adjugate;

  bool invertible() const { return !is_zero(determinant); }

  /// A^{-1}; requires det(A) to divide every adjugate entry (always true for
  /// fields, and for integer matrices with det = +-1).
  Dense<Scalar> inverse() const {
    if (!invertible()) throw std::domain_error("matrix is singular");
    Dense<Scalar> inv(adjugate.rows(), adjugate.cols());
    for (Index i = 0; i < inv.rows(); ++i)
      for (Index j = 0; j < inv.cols(); ++j) {
        if (!divides(determinant, adjugate(i, j)))
          throw std::domain_error("inverse is not integral over this scalar type");
        inv(i, j) = adjugate(i, j) / determinant;
      }
    return inv;
  }

 private:
  static bool divides(const Scalar& d, const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, BigInt> || std::is_integral_v<Scalar>) {
      return is_zero(Scalar(x % d));
    } else {
      return true;
    }
  }
};

template <typename Scalar>
ExactInverse<Scalar> bareiss_inverse(const Dense<Scalar>& a) {
  if (!is_square(a)) throw std::invalid_argument("bareiss_inverse: matrix must be square");
  const Index s = a.rows();
  const Index width = 2 * s;
  Dense<Scalar> m = Dense<Scalar>::Zero(s, width);
  m.leftCols(s) = a;
  for (Index i = 0; i < s; ++i) m(i, s + i) = Scalar(1);

  ExactInverse<Scalar> result;
  if (s == 0) {
    result.determinant = Scalar(1);
    return result;
  }

  Scalar previous(1);
  bool negate = false;
  for (Index k = 0; k < s; ++k) {
    Index pivot_row = k;
    while (pivot_row < s && is_zero<Scalar>(m(pivot_row, k))) ++pivot_row;
    if (pivot_row == s) return result;  // singular: determinant stays 0
    if (pivot_row != k) {
      m.row(k).swap(m.row(pivot_row));
      negate = !negate;
    }
    const Scalar pivot = m(k, k);
    const bool unit_step = pivot == previous;
    for (Index i = 0; i < s; ++i) {
      if (i == k) continue;
      const Scalar factor = m(i, k);
      if (unit_step) {
        if (is_zero(factor)) continue;
        // pivot == previous, so pivot divides factor * m(k, j) exactly.
        const bool unit_pivot = pivot == Scalar(1);
        for (Index j = 0; j < width; ++j) {
          const Scalar& mkj = m(k, j);
          if (is_zero(mkj)) continue;
          if (unit_pivot)
            m(i, j) -= factor * mkj;
          else
            m(i, j) -= factor * mkj / pivot;
        }
      } else {
        for (Index j = 0; j < width; ++j) m(i, j) = (pivot * m(i, j) - factor * m(k, j)) / previous;
      }
    }
    previous = pivot;
  }

  result.determinant = negate ? Scalar(-previous) : previous;
  result.adjugate = m.rightCols(s);
  if (negate) result.adjugate = -result.adjugate;
  return result;
}

/// Exact determinant by fraction-free elimination.
template <typename Scalar>
Scalar bareiss_determinant(const Dense<Scalar>& a) {
  return bareiss_inverse(a).determinant;
}

}  // namespace cardinal

#pragma once

// Scalar and dense matrix types shared by every module, plus a handful of
// structure predicates and exact helpers that work for any scalar.
//
// Integer matrices use GMP integers and rational matrices use GMP rationals,
// both through Boost.Multiprecision with expression templates disabled so the
// numbers behave as plain value types inside Eigen expressions.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cardinal {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Dense<BigInt>;
using RatMatrix = Dense<Rational>;

/// Raised when an identity that must hold by construction fails. This marks a
/// bug in the library, never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a request would exceed a configured resource budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
inline bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

// ---------------------------------------------------------------------------
// Structure predicates. Indices are 0-based internally; the antidiagonal of an
// s x s matrix is i + j == s - 1.

template <typename Derived>
bool is_square(const Eigen::MatrixBase<Derived>& a) {
  return a.rows() == a.cols();
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a) {
  if (!is_square(a)) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

template <typename Derived>
bool is_lower_triangular(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (!is_zero<Scalar>(a(i, j))) return false;
  return true;
}

template <typename Derived>
bool is_strictly_lower_triangular(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_lower_triangular(a)) return false;
  for (Index i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (!is_zero<Scalar>(a(i, i))) return false;
  return true;
}

/// Zero at every entry strictly below the antidiagonal.
template <typename Derived>
bool is_skew_upper_triangular(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_square(a)) return false;
  const Index s = a.rows();
  for (Index i = 0; i < s; ++i)
    for (Index j = s - i; j < s; ++j)
      if (!is_zero<Scalar>(a(i, j))) return false;
  return true;
}

template <typename Derived>
bool has_unit_antidiagonal(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_square(a)) return false;
  const Index s = a.rows();
  for (Index i = 0; i < s; ++i)
    if (a(i, s - 1 - i) != Scalar(1)) return false;
  return true;
}

/// Location of the first differing entry in row-major order, if any.
struct EntryLocation {
  Index row = 0;
  Index col = 0;
};

template <typename DerivedA, typename DerivedB>
std::optional<EntryLocation> first_mismatch(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return EntryLocation{-1, -1};
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return EntryLocation{i, j};
  return std::nullopt;
}

/// "(i,j)" with 1-based indices, for reports and error messages.
inline std::string describe(const EntryLocation& at) {
  if (at.row < 0) return "(shape mismatch)";
  return "(" + std::to_string(at.row + 1) + "," + std::to_string(at.col + 1) + ")";
}

// ---------------------------------------------------------------------------
// Exact helpers.

/// Exact product that skips zero entries on both sides. The matrices in this
/// library are triangular, skew-triangular or banded, so this is much cheaper
/// than the dense kernel for multiprecision scalars.
template <typename Scalar>
Dense<Scalar> exact_product(const Dense<Scalar>& a, const Dense<Scalar>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("exact_product: shape mismatch");
  Dense<Scalar> c = Dense<Scalar>::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index l = 0; l < a.cols(); ++l) {
      const Scalar& ail = a(i, l);
      if (is_zero(ail)) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        const Scalar& blj = b(l, j);
        if (is_zero(blj)) continue;
        c(i, j) += ail * blj;
      }
    }
  }
  return c;
}

/// T A T where T has ones on and above the antidiagonal. Entry (i,j) is the sum
/// of the top-left (s-i) x (s-j) block of A (0-based), evaluated with a 2-D
/// prefix sum in O(s^2).
template <typename Scalar>
Dense<Scalar> t_sandwich(const Dense<Scalar>& a) {
  if (!is_square(a)) throw std::invalid_argument("t_sandwich: matrix must be square");
  const Index s = a.rows();
  // prefix(r, c) = sum of a over rows < r, cols < c.
  Dense<Scalar> prefix = Dense<Scalar>::Zero(s + 1, s + 1);
  for (Index r = 0; r < s; ++r)
    for (Index c = 0; c < s; ++c)
      prefix(r + 1, c + 1) = a(r, c) + prefix(r, c + 1) + prefix(r + 1, c) - prefix(r, c);
  Dense<Scalar> out(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j) out(i, j) = prefix(s - i, s - j);
  return out;
}

/// Reverses row order (left multiplication by the exchange matrix).
template <typename Scalar>
Dense<Scalar> reverse_rows(const Dense<Scalar>& a) {
  return a.colwise().reverse();
}

/// Reverses column order (right multiplication by the exchange matrix).
template <typename Scalar>
Dense<Scalar> reverse_cols(const Dense<Scalar>& a) {
  return a.rowwise().reverse();
}

template <typename Scalar>
Dense<Scalar> identity(Index s) {
  Dense<Scalar> id = Dense<Scalar>::Zero(s, s);
  for (Index i = 0; i < s; ++i) id(i, i) = Scalar(1);
  return id;
}

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

template <typename Scalar>
Scalar max_abs_entry(const Dense<Scalar>& a) {
  Scalar best(0);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      Scalar v = abs_value(a(i, j));
      if (v > best) best = v;
    }
  return best;
}

inline BigInt floor_of(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.backend().data(), mpq_numref(q.backend().data()), mpq_denref(q.backend().data()));
  return out;
}

inline IntMatrix floor_of(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = floor_of(a(i, j));
  return out;
}

/// Lifts an integer matrix to the rationals.
inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

/// The single lossy step in the library: exact entries to double precision.
template <typename Scalar>
Eigen::MatrixXd to_double(const Dense<Scalar>& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = static_cast<double>(a(i, j));
  return out;
}

}  // namespace cardinal

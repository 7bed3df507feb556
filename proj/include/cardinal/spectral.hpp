#pragma once

// Norms and spectra. Matrices are built exactly; to_double() is the only lossy
// step before the symmetric eigensolver.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cardinal/divisors.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Index iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  Index iterations() const { return iterations_; }

 private:
  Index iterations_;
};

/// Exact sum of squared entries.
template <typename Scalar>
Rational frobenius_norm_sq(const Dense<Scalar>& a) {
  Rational total(0);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) total += Rational(a(i, j)) * Rational(a(i, j));
  return total;
}

/// All eigenvalues of a symmetric matrix in ascending order. When
/// check_residuals is set, every pair must satisfy
/// ||A v - lambda v|| <= 1e-8 ||A||_F.
Eigen::VectorXd eigen_spectrum(const Eigen::MatrixXd& a, bool check_residuals = false);

/// Spectral radius of a symmetric matrix, which is its l2 operator norm.
/// Throws std::invalid_argument for asymmetric input (|a_ij - a_ji| > tol) and
/// ConvergenceError when the extremal eigenpair residual exceeds tol.
double operator_norm(const Eigen::MatrixXd& a, double tol = 1e-9);

/// Sign and natural log of |product of eigenvalues|; product = sign * exp(log_abs).
struct EigenProduct {
  int sign = 1;
  double log_abs = 0.0;
  double value() const;
};
EigenProduct eigenvalue_product(const Eigen::VectorXd& eigenvalues);

struct SpectralReport {
  std::int64_t n = 0;
  Index s = 0;
  Rational frobenius_norm_sq;
  double frobenius_norm = 0.0;
  double operator_norm = 0.0;
  Eigen::VectorXd eigenvalues;
  double min_abs_eigenvalue = 0.0;
  Index positive_count = 0;
  Index negative_count = 0;
};

/// Full report for an exact symmetric matrix. Throws InternalError if the
/// float norm disagrees with the exact one beyond 1e-12 relative, or if some
/// eigenvalue is exactly zero.
template <typename Scalar>
SpectralReport spectral_report(std::int64_t n, const Dense<Scalar>& a);

extern template SpectralReport spectral_report<BigInt>(std::int64_t, const IntMatrix&);
extern template SpectralReport spectral_report<Rational>(std::int64_t, const RatMatrix&);

struct HomotopySnapshot {
  double t = 0.0;
  Eigen::VectorXd eigenvalues;
  Index positive_count = 0;
  Index negative_count = 0;
  double min_abs_eigenvalue = 0.0;
  /// min |lambda| fell below the configured floor.
  bool flagged = false;
};

struct HomotopyTrace {
  std::int64_t n = 0;
  Index s = 0;
  std::vector<HomotopySnapshot> snapshots;
  bool sign_counts_constant = true;
  Index flagged_steps = 0;
};

/// Eigenvalues along A(t) = (1 - t) T + t U_n at t = 0, 1/(steps-1), ..., 1.
/// Every A(t) is symmetric, skew-upper-triangular and has unit antidiagonal.
/// Small |lambda| is flagged, never fatal. Throws std::invalid_argument for
/// steps < 2.
HomotopyTrace homotopy_track(const DivisorSet& divisors, int steps, double min_abs_floor = 1e-9);

/// Eigenvalues of U_n and U_{n+1}, for inspecting interlacing.
struct PairedSpectra {
  Eigen::VectorXd current;
  Eigen::VectorXd next;
};
PairedSpectra paired_spectra(std::int64_t n);

}  // namespace cardinal

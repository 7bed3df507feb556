#include "cardinal/spectral.hpp"

#include <cmath>
#include <string>

#include "cardinal/cardinal_matrices.hpp"

namespace cardinal {

namespace {

void require_symmetric(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol)
        throw std::invalid_argument("matrix is not symmetric at " + describe(EntryLocation{i, j}));
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(const Eigen::MatrixXd& a,
                                                     int options = Eigen::ComputeEigenvectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, options);
  if (solver.info() != Eigen::Success) {
    const Index limit = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations * a.rows();
    throw ConvergenceError("symmetric eigensolver did not converge within " +
                               std::to_string(limit) + " iterations",
                           limit);
  }
  return solver;
}

}  // namespace

Eigen::VectorXd eigen_spectrum(const Eigen::MatrixXd& a, bool check_residuals) {
  require_symmetric(a, 0.0);
  if (a.rows() == 0) return {};
  const auto solver = solve(a, check_residuals ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (check_residuals) {
    const double bound = 1e-8 * a.norm();
    for (Index k = 0; k < a.rows(); ++k) {
      const Eigen::VectorXd v = solver.eigenvectors().col(k);
      const double residual = (a * v - solver.eigenvalues()(k) * v).norm();
      if (residual > bound)
        throw ConvergenceError("eigenpair " + std::to_string(k + 1) + " has residual " +
                                   std::to_string(residual),
                               0);
    }
  }
  return solver.eigenvalues();
}

double operator_norm(const Eigen::MatrixXd& a, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("operator_norm needs tol > 0");
  require_symmetric(a, tol);
  if (a.rows() == 0) return 0.0;
  const auto solver = solve(a);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Index extremal = std::abs(values(0)) > std::abs(values(values.size() - 1)) ? 0 : values.size() - 1;
  const Eigen::VectorXd v = solver.eigenvectors().col(extremal);
  const double residual = (a * v - values(extremal) * v).norm();
  if (residual > tol)
    throw ConvergenceError("extremal eigenpair residual " + std::to_string(residual) +
                               " exceeds tolerance",
                           0);
  return std::abs(values(extremal));
}

double EigenProduct::value() const { return sign * std::exp(log_abs); }

EigenProduct eigenvalue_product(const Eigen::VectorXd& eigenvalues) {
  EigenProduct p;
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    const double lambda = eigenvalues(k);
    if (lambda < 0) p.sign = -p.sign;
    if (lambda == 0) {
      p.sign = 0;
      return p;
    }
    p.log_abs += std::log(std::abs(lambda));
  }
  return p;
}

template <typename Scalar>
SpectralReport spectral_report(std::int64_t n, const Dense<Scalar>& a) {
  SpectralReport r;
  r.n = n;
  r.s = a.rows();
  r.frobenius_norm_sq = frobenius_norm_sq(a);
  const Eigen::MatrixXd f = to_double(a);
  r.frobenius_norm = f.norm();
  const double exact = static_cast<double>(r.frobenius_norm_sq);
  if (exact > 0 && std::abs(r.frobenius_norm * r.frobenius_norm - exact) > 1e-12 * exact)
    throw InternalError("float Frobenius norm disagrees with the exact value");
  r.eigenvalues = eigen_spectrum(f);
  r.operator_norm = r.s > 0 ? std::max(std::abs(r.eigenvalues(0)), std::abs(r.eigenvalues(r.s - 1))) : 0.0;
  r.min_abs_eigenvalue = r.s > 0 ? r.eigenvalues.cwiseAbs().minCoeff() : 0.0;
  for (Index k = 0; k < r.s; ++k) {
    if (r.eigenvalues(k) > 0) ++r.positive_count;
    if (r.eigenvalues(k) < 0) ++r.negative_count;
  }
  if (r.positive_count + r.negative_count != r.s)
    throw InternalError("a zero eigenvalue appeared in a matrix with nonzero determinant");
  return r;
}

template SpectralReport spectral_report<BigInt>(std::int64_t, const IntMatrix&);
template SpectralReport spectral_report<Rational>(std::int64_t, const RatMatrix&);

HomotopyTrace homotopy_track(const DivisorSet& divisors, int steps, double min_abs_floor) {
  if (steps < 2) throw std::invalid_argument("homotopy needs at least 2 steps");
  const Eigen::MatrixXd t = to_double(t_matrix(divisors.size()));
  const Eigen::MatrixXd u = to_double(u_matrix(divisors));
  HomotopyTrace trace;
  trace.n = divisors.n();
  trace.s = divisors.size();
  trace.snapshots.reserve(static_cast<std::size_t>(steps));
  for (int step = 0; step < steps; ++step) {
    HomotopySnapshot snap;
    snap.t = static_cast<double>(step) / (steps - 1);
    const Eigen::MatrixXd a = (1.0 - snap.t) * t + snap.t * u;
    snap.eigenvalues = eigen_spectrum(a);
    snap.positive_count = (snap.eigenvalues.array() > 0).count();
    snap.negative_count = (snap.eigenvalues.array() < 0).count();
    snap.min_abs_eigenvalue = snap.eigenvalues.cwiseAbs().minCoeff();
    snap.flagged = snap.min_abs_eigenvalue < min_abs_floor;
    if (snap.flagged) ++trace.flagged_steps;
    if (!trace.snapshots.empty()) {
      const auto& first = trace.snapshots.front();
      if (snap.positive_count != first.positive_count || snap.negative_count != first.negative_count)
        trace.sign_counts_constant = false;
    }
    trace.snapshots.push_back(std::move(snap));
  }
  return trace;
}

PairedSpectra paired_spectra(std::int64_t n) {
  return {eigen_spectrum(to_double(u_matrix(DivisorSet(n)))),
          eigen_spectrum(to_double(u_matrix(DivisorSet(n + 1))))};
}

}  // namespace cardinal

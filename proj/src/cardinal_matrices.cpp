#include "cardinal/cardinal_matrices.hpp"

#include <stdexcept>
#include <string>

#include "cardinal/bareiss.hpp"

namespace cardinal {

IntMatrix u_matrix(const DivisorSet& divisors) {
  const Index s = divisors.size();
  const std::int64_t n = divisors.n();
  IntMatrix u(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j) u(i, j) = (n / divisors[i]) / divisors[j];
  return u;
}

UnimodularInverse invert_u(const DivisorSet& divisors) {
  const IntMatrix u = u_matrix(divisors);
  const Index s = u.rows();
  // J U is lower triangular with unit diagonal; (J U)^{-1} = U^{-1} J.
  const ExactInverse<BigInt> flipped = bareiss_inverse(reverse_rows(u));
  // det(J) = (-1)^{s(s-1)/2}.
  const bool exchange_negative = ((s * (s - 1) / 2) % 2) != 0;
  const BigInt det = exchange_negative ? BigInt(-flipped.determinant) : flipped.determinant;
  if (det != 1 && det != -1)
    throw InternalError("det U_" + std::to_string(divisors.n()) + " = " + det.str() +
                        ", expected +-1");
  UnimodularInverse out;
  out.determinant = det == 1 ? 1 : -1;
  out.inverse = reverse_cols(flipped.inverse());
  return out;
}

IntMatrix m_matrix(const DivisorSet& divisors) {
  const IntMatrix t = t_matrix(divisors.size());
  return exact_product(exact_product(t, u_inverse(divisors)), t);
}

IntMatrix m_matrix_via_mertens(const DivisorSet& divisors, const MertensTable& mertens) {
  const std::int64_t n = divisors.n();
  if (mertens.limit() < n)
    throw std::invalid_argument("Mertens table up to " + std::to_string(mertens.limit()) +
                                " does not cover n = " + std::to_string(n));
  const Index s = divisors.size();
  IntMatrix m(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j) m(i, j) = mertens((n / divisors[i]) / divisors[j]);
  return m;
}

bool check_floor_commutation(std::int64_t n, std::int64_t i, std::int64_t j) {
  if (n < 1 || i < 1 || j < 1) throw std::invalid_argument("floor commutation needs n, i, j >= 1");
  const __int128 product = static_cast<__int128>(i) * j;
  const auto direct = static_cast<std::int64_t>(product > n ? 0 : n / product);
  return (n / j) / i == direct && (n / i) / j == direct;
}

CheckReport verify_t_symmetrization(const DivisorSet& divisors) {
  const Index s = divisors.size();
  CheckReport report;
  for (Index m = 0; m < s; ++m) {
    const GeneratorAction action = rho_action(divisors, divisors[m]);
    // (T rho)(i,j) = 1 iff column j maps to row r with i + r <= s - 1 (0-based).
    auto entry = [&](Index i, Index j) {
      const auto& r = action.target[static_cast<std::size_t>(j)];
      return r && i + *r <= s - 1;
    };
    for (Index i = 0; i < s; ++i)
      for (Index j = i + 1; j < s; ++j)
        if (entry(i, j) != entry(j, i)) {
          report.passed = false;
          report.first_failure = EntryLocation{i, j};
          report.detail = "T rho(" + std::to_string(divisors[m]) + ") is not symmetric at " +
                          describe(EntryLocation{i, j});
          return report;
        }
  }
  return report;
}

}  // namespace cardinal

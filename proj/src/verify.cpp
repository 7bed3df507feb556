#include "cardinal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cardinal/algebra.hpp"
#include "cardinal/bareiss.hpp"
#include "cardinal/cardinal_matrices.hpp"
#include "cardinal/deformed.hpp"
#include "cardinal/divisors.hpp"
#include "cardinal/mertens.hpp"

namespace cardinal {

namespace {

std::string_view status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

LedgerEntry from_report(std::string name, const CheckReport& report) {
  return {std::move(name), report.passed ? CheckStatus::pass : CheckStatus::fail, report.detail,
          report.first_failure};
}

CheckReport failure(std::string detail, std::optional<EntryLocation> at = std::nullopt) {
  CheckReport r;
  r.passed = false;
  r.first_failure = at;
  r.detail = std::move(detail);
  return r;
}

CheckReport same_matrix(const auto& lhs, const auto& rhs, const std::string& what) {
  if (auto at = first_mismatch(lhs, rhs)) return failure(what + " differs at " + describe(*at), at);
  return {};
}

// 4 + 2 sqrt 2 bounds k^+/k on S_n \ {n}; compare exactly: x <= 4 + 2 sqrt 2
// iff x - 4 <= 2 sqrt 2 iff (x < 4 or (x - 4)^2 <= 8).
bool within_successor_bound(const Rational& x) {
  const Rational shifted = x - 4;
  return shifted <= 0 || shifted * shifted <= 8;
}

}  // namespace

bool VerifyLedger::passed() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const LedgerEntry& e) { return e.status == CheckStatus::fail; });
}

nlohmann::json VerifyLedger::to_json() const {
  nlohmann::json doc;
  doc["n"] = n;
  doc["status"] = passed() ? "pass" : "fail";
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json c;
    c["check"] = e.name;
    c["status"] = std::string(status_name(e.status));
    if (!e.detail.empty()) c["detail"] = e.detail;
    if (e.first_failure) c["first_failure"] = {e.first_failure->row + 1, e.first_failure->col + 1};
    checks.push_back(std::move(c));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

std::string VerifyLedger::to_text() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& e : entries) width = std::max(width, e.name.size());
  out << "verify n = " << n << '\n';
  for (const auto& e : entries) {
    out << "  " << e.name << std::string(width - e.name.size() + 2, ' ') << status_name(e.status);
    if (!e.detail.empty()) out << "  " << e.detail;
    out << '\n';
  }
  out << "overall: " << (passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

VerifyLedger verify_n(std::int64_t n, const VerifyOptions& options) {
  VerifyLedger ledger;
  ledger.n = n;
  const DivisorSet divisors(n);
  const Index s = divisors.size();

  auto run = [&](std::string name, const std::function<CheckReport()>& check) {
    try {
      ledger.entries.push_back(from_report(std::move(name), check()));
    } catch (const std::exception& e) {
      ledger.entries.push_back({std::move(name), CheckStatus::fail, std::string("exception: ") + e.what(), std::nullopt});
    }
  };
  auto skip = [&](std::string name, std::string why) {
    ledger.entries.push_back({std::move(name), CheckStatus::skipped, std::move(why), std::nullopt});
  };

  // --- approximate divisors -------------------------------------------------
  if (n <= options.brute_force_cap) {
    run("divisors-brute-force", [&]() -> CheckReport {
      const auto expected = brute_force_divisor_values(n);
      if (!std::equal(expected.begin(), expected.end(), divisors.elements().begin(),
                      divisors.elements().end()))
        return failure("block walk disagrees with brute-force enumeration");
      return {};
    });
  } else {
    skip("divisors-brute-force", "n above brute-force cap");
  }
  run("divisors-count", [&]() -> CheckReport {
    const std::int64_t m = isqrt(n);
    if (s != 2 * m && s != 2 * m - 1) return failure("s = " + std::to_string(s) + ", floor(sqrt n) = " + std::to_string(m));
    return {};
  });
  run("involution", [&]() -> CheckReport {
    for (Index i = 0; i < s; ++i) {
      const std::int64_t k = divisors[i];
      if (divisors.involution(k) != divisors[s - 1 - i] || divisors.involution(divisors.involution(k)) != k)
        return failure("involution fails at k = " + std::to_string(k));
    }
    return {};
  });
  run("successor-ratio-bound", [&]() -> CheckReport {
    for (Index i = 0; i + 1 < s; ++i)
      if (!within_successor_bound(Rational(divisors[i + 1], divisors[i])))
        return failure("k+/k exceeds 4 + 2 sqrt 2 at k = " + std::to_string(divisors[i]));
    return {};
  });

  // --- algebra ---------------------------------------------------------------
  run("rho-structure", [&]() -> CheckReport {
    for (Index m = 0; m < s; ++m) {
      const IntMatrix r = rho(divisors, divisors[m]);
      if (m == 0) {
        if (auto at = first_mismatch(r, identity<BigInt>(s))) return failure("rho(1) is not the identity", at);
        continue;
      }
      if (!is_strictly_lower_triangular(r))
        return failure("rho(" + std::to_string(divisors[m]) + ") is not strictly lower triangular");
      for (Index i = 0; i < s; ++i)
        if (r(i, 0) != (i == m ? 1 : 0))
          return failure("column 1 of rho(" + std::to_string(divisors[m]) + ") is not e_" + std::to_string(m + 1),
                         EntryLocation{i, 0});
    }
    return {};
  });
  if (n <= options.commutativity_cap) {
    run("commutativity", [&] { return verify_commutativity(divisors); });
  } else {
    skip("commutativity", "n above commutativity cap " + std::to_string(options.commutativity_cap));
  }
  run("t-symmetrization", [&] { return verify_t_symmetrization(divisors); });

  const MobiusTable mobius = sieve_mobius(n, options.sieve);
  const MertensTable mertens_table(mobius);
  const IntMatrix zeta = zeta_matrix(divisors);
  const IntMatrix zeta_inv = mobius_matrix(divisors, mobius);
  run("zeta-times-mobius", [&] {
    return same_matrix(exact_product(zeta, zeta_inv), identity<BigInt>(s), "Z_n Z_n^{-1} vs I");
  });
  run("homomorphism-sample", [&]() -> CheckReport {
    std::mt19937_64 rng(options.seed ^ static_cast<std::uint64_t>(n));
    for (int k = 0; k < options.homomorphism_samples; ++k) {
      const CoeffVector a = random_sign_coeffs(n, rng);
      const CoeffVector b = random_sign_coeffs(n, rng);
      if (CheckReport r = verify_homomorphism(divisors, a, b); !r) return r;
    }
    return verify_homomorphism(divisors, CoeffVector::ones(n), CoeffVector::mobius(mobius));
  });

  // --- Cardinal matrices -----------------------------------------------------
  const IntMatrix t = t_matrix(s);
  const IntMatrix u = u_matrix(divisors);
  run("t-inverse", [&] { return same_matrix(exact_product(t, t_inverse(s)), identity<BigInt>(s), "T T^{-1} vs I"); });
  run("u-structure", [&]() -> CheckReport {
    if (!is_symmetric(u)) return failure("U_n is not symmetric");
    if (!is_skew_upper_triangular(u)) return failure("U_n has entries below the antidiagonal");
    if (!has_unit_antidiagonal(u)) return failure("U_n antidiagonal is not all ones");
    return {};
  });
  run("u-equals-t-zeta", [&] { return same_matrix(u, exact_product(t, zeta), "U_n vs T Z_n"); });

  std::optional<UnimodularInverse> inverse;
  if (n <= options.inversion_cap) {
    run("u-unimodular", [&]() -> CheckReport {
      inverse = invert_u(divisors);
      if (auto r = same_matrix(exact_product(u, inverse->inverse), identity<BigInt>(s), "U_n U_n^{-1} vs I"); !r)
        return r;
      CheckReport ok;
      ok.detail = "det = " + std::to_string(inverse->determinant);
      return ok;
    });
  } else {
    skip("u-unimodular", "n above inversion cap");
  }
  const IntMatrix m_mertens = m_matrix_via_mertens(divisors, mertens_table);
  if (inverse) {
    run("m-equals-mertens", [&] {
      const IntMatrix m = exact_product(exact_product(t, inverse->inverse), t);
      return same_matrix(m, m_mertens, "T U_n^{-1} T vs M(floor(n/(k_i k_j)))");
    });
    run("m-determinant", [&]() -> CheckReport {
      const BigInt det = bareiss_determinant<BigInt>(reverse_rows(m_mertens));
      const bool flip = ((s * (s - 1) / 2) % 2) != 0;
      const BigInt det_m = flip ? BigInt(-det) : det;
      if (det_m != inverse->determinant)
        return failure("det M_n = " + det_m.str() + " but det U_n = " + std::to_string(inverse->determinant));
      return {};
    });
  } else {
    skip("m-equals-mertens", "needs the exact inverse");
    skip("m-determinant", "needs the exact inverse");
  }
  run("m-equals-t-mobius", [&] { return same_matrix(exact_product(t, zeta_inv), m_mertens, "T Z_n^{-1} vs M_n"); });
  run("floor-commutation", [&]() -> CheckReport {
    const std::int64_t bound = std::min<std::int64_t>(n, 200);
    for (std::int64_t i = 1; i <= bound; ++i)
      for (std::int64_t j = 1; j <= bound; ++j)
        if (!check_floor_commutation(n, i, j))
          return failure("fails at i = " + std::to_string(i) + ", j = " + std::to_string(j));
    return {};
  });

  // --- deformed matrices -----------------------------------------------------
  const RatMatrix ut = u_tilde(divisors);
  const RatMatrix up = u_tilde_plus(divisors);
  const RatMatrix ur = to_rational(u);
  run("u-tilde-floor", [&]() -> CheckReport {
    if (auto r = same_matrix(floor_of(ut), u, "floor(U~) vs U"); !r) return r;
    return same_matrix(floor_of(up), u, "floor(U~+) vs U");
  });
  run("entrywise-ordering", [&]() -> CheckReport {
    const RatMatrix tr = to_rational(t);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s - i; ++j) {
        const Rational gap = ut(i, j) - ur(i, j);
        if (!(tr(i, j) <= ur(i, j) && ur(i, j) <= ut(i, j) && ut(i, j) <= up(i, j)) || gap < 0 || gap >= 1)
          return failure("T <= U <= U~ <= U~+ with 0 <= U~ - U < 1 fails", EntryLocation{i, j});
      }
    return {};
  });
  run("u-tilde-inverse", [&]() -> CheckReport {
    if (CheckReport r = verify_u_tilde_inverse(divisors); !r) return r;
    const RatMatrix inv = u_tilde_inverse(divisors);
    for (Index i = 0; i < s; ++i) {
      const Rational& anti = inv(i, s - 1 - i);
      if (!(anti > 0 && anti <= 1)) return failure("antidiagonal entry outside (0, 1]", EntryLocation{i, s - 1 - i});
      if (i > 0) {
        const Rational& below = inv(i, s - i);
        if (!(below < 0 && within_successor_bound(Rational(-below))))
          return failure("sub-antidiagonal entry outside [-(4 + 2 sqrt 2), 0)", EntryLocation{i, s - i});
      }
    }
    return {};
  });
  run("u-tilde-determinant", [&]() -> CheckReport {
    const Rational det = u_tilde_determinant(divisors);
    if (abs_value(det) < 1) return failure("|det U~| < 1");
    if (s <= 128) {
      const Rational eliminated = bareiss_determinant<Rational>(ut);
      if (eliminated != det)
        return failure("elimination gives " + eliminated.str() + ", antidiagonal product gives " + det.str());
    }
    return {};
  });
  run("m-tilde", [&]() -> CheckReport {
    const RatMatrix mt = m_tilde(divisors);
    if (!is_symmetric(mt)) return failure("M~_n is not symmetric");
    return same_matrix(mt, t_sandwich(u_tilde_inverse(divisors)), "M~_n vs block sums of U~^{-1}");
  });
  run("rank-one", [&] { return verify_rank_one(up); });
  run("difference-matrices", [&]() -> CheckReport {
    const DifferenceMatrices d = difference_matrices(divisors);
    if (auto r = same_matrix(d.e_tilde, RatMatrix(d.e_plus + d.e), "E~ vs E+ + E"); !r) return r;
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j)
        if (d.e(i, j) < 0 || d.e(i, j) >= 1 || d.e_plus(i, j) < 0 || d.e_tilde(i, j) < 0)
          return failure("difference matrix entry out of range", EntryLocation{i, j});
    if (!is_symmetric(d.e) || !is_symmetric(d.e_plus) || !is_symmetric(d.e_tilde))
      return failure("difference matrix is not symmetric");
    return {};
  });
  run("e-determinant-zero", [&]() -> CheckReport {
    const Rational det = bareiss_determinant<Rational>(difference_matrices(divisors).e);
    if (det != 0) return failure("det E_n = " + det.str());
    return {};
  });
  run("w-bounds", [&]() -> CheckReport {
    const ZTildeW zw = z_tilde_and_w(divisors);
    if (auto r = same_matrix(exact_product(to_rational(t), zw.z_tilde), ut, "T Z~ vs U~"); !r) return r;
    if (!is_lower_triangular(zw.z_tilde)) return failure("Z~ is not lower triangular");
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j <= i; ++j)
        if (!(zw.w(i, j) > -1 && zw.w(i, j) < 1)) return failure("W entry outside (-1, 1)", EntryLocation{i, j});
    const RatMatrix e = ut - ur;
    for (Index j = 0; j < s; ++j)
      if (zw.w.col(j).sum() != e(0, j)) return failure("column sum of W differs from row 1 of U~ - U", EntryLocation{0, j});
    return {};
  });
  return ledger;
}

}  // namespace cardinal

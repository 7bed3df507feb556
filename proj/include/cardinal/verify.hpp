#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cardinal/mertens.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

enum class CheckStatus { pass, fail, skipped };

struct LedgerEntry {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  /// First counterexample or other context; empty on a plain pass.
  std::string detail;
  /// First differing matrix entry, when the check compares matrices.
  std::optional<EntryLocation> first_failure;
};

/// Every identity check run for one n. A skipped check (e.g. commutativity
/// above its size cap) does not count against the overall status.
struct VerifyLedger {
  std::int64_t n = 0;
  std::vector<LedgerEntry> entries;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  /// Pairwise generator commutativity is only checked up to this n.
  std::int64_t commutativity_cap = 500;
  /// Brute-force divisor enumeration is only run up to this n.
  std::int64_t brute_force_cap = 10'000'000;
  /// Exact inversion of U_n is only run up to this n.
  std::int64_t inversion_cap = 200'000;
  int homomorphism_samples = 3;
  std::uint64_t seed = 20100101;
  SieveConfig sieve;
};

VerifyLedger verify_n(std::int64_t n, const VerifyOptions& options = {});

}  // namespace cardinal

#pragma once

// Moebius sieve, Mertens prefix sums, and block sums of arithmetic
// coefficient sequences over the intervals (k^-, k] of the approximate
// divisors.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cardinal/divisors.hpp"

namespace cardinal {

struct SieveConfig {
  /// Limits at or above this are sieved segment by segment.
  std::int64_t segmented_threshold = 10'000'000;
  std::int64_t segment_length = 1 << 18;
  /// Upper bound on bytes a full table may occupy.
  std::int64_t memory_budget_bytes = std::int64_t{2} << 30;
};

/// mu(1..N). Index 0 is unused and holds 0.
class MobiusTable {
 public:
  MobiusTable(std::int64_t limit, std::vector<std::int8_t> values);

  std::int64_t limit() const { return limit_; }
  int operator()(std::int64_t k) const;
  std::span<const std::int8_t> values() const { return values_; }

 private:
  std::int64_t limit_;
  std::vector<std::int8_t> values_;
};

/// M(0..N) with M(0) = 0.
class MertensTable {
 public:
  explicit MertensTable(const MobiusTable& mobius);

  std::int64_t limit() const { return static_cast<std::int64_t>(prefix_.size()) - 1; }
  /// M(x) for 0 <= x <= limit.
  std::int64_t operator()(std::int64_t x) const;

 private:
  std::vector<std::int64_t> prefix_;
};

/// Coefficients (a_1, ..., a_N) of a formal Dirichlet series; a[0] holds a_1.
struct CoeffVector {
  std::vector<std::int64_t> a;

  std::int64_t length() const { return static_cast<std::int64_t>(a.size()); }
  /// a_k, 1-based.
  std::int64_t operator()(std::int64_t k) const { return a[static_cast<std::size_t>(k - 1)]; }
  std::int64_t& operator()(std::int64_t k) { return a[static_cast<std::size_t>(k - 1)]; }

  static CoeffVector ones(std::int64_t length);
  static CoeffVector zeros(std::int64_t length);
  /// (1, 0, 0, ...), the series 1.
  static CoeffVector unit(std::int64_t length);
  static CoeffVector mobius(const MobiusTable& table);

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
};

/// Moebius values up to N. Linear sieve below the segmented threshold,
/// otherwise the table is filled segment by segment. Throws
/// std::invalid_argument for N < 1 and ResourceLimitError when the table would
/// exceed the memory budget.
MobiusTable sieve_mobius(std::int64_t limit, const SieveConfig& config = {});

/// Linear (Euler) sieve, always unsegmented.
MobiusTable linear_sieve_mobius(std::int64_t limit);

/// Streams mu over [first, last] in consecutive segments. Working memory is
/// O(segment_length + sqrt(last)).
void for_each_mobius_segment(
    std::int64_t first, std::int64_t last, std::int64_t segment_length,
    const std::function<void(std::int64_t segment_first, std::span<const std::int8_t> mu)>& fn);

/// Full Mertens table, subject to the same limits as sieve_mobius.
MertensTable mertens(std::int64_t limit, const SieveConfig& config = {});

/// M(N) using only segmented working memory.
std::int64_t mertens_value(std::int64_t limit, const SieveConfig& config = {});

/// Component i is the sum of a_k over predecessor(k_i) < k <= k_i. Throws
/// std::invalid_argument when the coefficients stop short of n.
std::vector<std::int64_t> block_sums(const DivisorSet& divisors, const CoeffVector& coeffs);

}  // namespace cardinal

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cardinal/types.hpp"

namespace cardinal {

/// floor(sqrt(n)) computed exactly for any nonnegative 64-bit n.
std::int64_t isqrt(std::int64_t n);

/// The approximate divisors of n: the distinct values floor(n/k), 1 <= k <= n,
/// stored in increasing order k_1 = 1 < k_2 < ... < k_s = n.
///
/// Positions are 0-based in this API; messages quote 1-based positions. The
/// map k -> floor(n/k) is an involution on the set and reverses positions:
/// floor(n / k_i) = k_{s+1-i}.
///
/// Immutable after construction.
class DivisorSet {
 public:
  /// Builds S_n in O(sqrt(n)) by walking the block boundaries of floor(n/k).
  /// Throws std::invalid_argument for n < 1.
  explicit DivisorSet(std::int64_t n);

  std::int64_t n() const { return n_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  std::span<const std::int64_t> elements() const { return elements_; }
  std::int64_t operator[](Index i) const { return elements_[static_cast<std::size_t>(i)]; }

  bool contains(std::int64_t k) const;

  /// 0-based position of k. Throws std::out_of_range when k is not in the set.
  Index position(std::int64_t k) const;

  /// floor(n/k). Throws std::out_of_range when k is not in the set.
  std::int64_t involution(std::int64_t k) const;

  /// Largest element strictly below k, with the predecessor of 1 defined as 0.
  std::int64_t predecessor(std::int64_t k) const;

  /// Smallest element strictly above k. Throws for k = n or k not in the set.
  std::int64_t successor(std::int64_t k) const;

  /// The unique position i with predecessor(k_i) < x <= k_i. Binary search.
  /// Throws std::out_of_range for x outside [1, n].
  Index locate_block(std::int64_t x) const;

  /// floor(sqrt(n)).
  std::int64_t root() const { return root_; }

  /// k in S_n^- = {1, ..., floor(sqrt n)}.
  bool in_lower_half(std::int64_t k) const;
  /// k in S_n^+ = {floor(n/j) : 1 <= j <= floor(sqrt n)}.
  bool in_upper_half(std::int64_t k) const;

 private:
  std::int64_t n_;
  std::int64_t root_;
  std::vector<std::int64_t> elements_;
};

inline DivisorSet build_divisor_set(std::int64_t n) { return DivisorSet(n); }

/// Brute-force reference: sort and deduplicate floor(n/k) over every k <= n.
std::vector<std::int64_t> brute_force_divisor_values(std::int64_t n);

}  // namespace cardinal

#include "cardinal/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cardinal {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

DivisorSet::DivisorSet(std::int64_t n) : n_(n), root_(0) {
  if (n < 1) throw std::invalid_argument("divisor set requires n >= 1, got " + std::to_string(n));
  root_ = isqrt(n);
  // Values floor(n/k) are constant on blocks k in [lo, n / (n / lo)].
  std::vector<std::int64_t> descending;
  descending.reserve(static_cast<std::size_t>(2 * root_ + 1));
  for (std::int64_t lo = 1; lo <= n;) {
    const std::int64_t q = n / lo;
    descending.push_back(q);
    lo = n / q + 1;
  }
  elements_.assign(descending.rbegin(), descending.rend());
}

bool DivisorSet::contains(std::int64_t k) const {
  return std::binary_search(elements_.begin(), elements_.end(), k);
}

Index DivisorSet::position(std::int64_t k) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), k);
  if (it == elements_.end() || *it != k)
    throw std::out_of_range(std::to_string(k) + " is not an approximate divisor of " +
                            std::to_string(n_));
  return static_cast<Index>(it - elements_.begin());
}

std::int64_t DivisorSet::involution(std::int64_t k) const {
  position(k);
  return n_ / k;
}

std::int64_t DivisorSet::predecessor(std::int64_t k) const {
  const Index i = position(k);
  return i == 0 ? 0 : (*this)[i - 1];
}

std::int64_t DivisorSet::successor(std::int64_t k) const {
  const Index i = position(k);
  if (i + 1 == size())
    throw std::out_of_range("the largest approximate divisor " + std::to_string(k) +
                            " has no successor");
  return (*this)[i + 1];
}

Index DivisorSet::locate_block(std::int64_t x) const {
  if (x < 1 || x > n_)
    throw std::out_of_range("block lookup needs 1 <= x <= " + std::to_string(n_) + ", got " +
                            std::to_string(x));
  return static_cast<Index>(std::lower_bound(elements_.begin(), elements_.end(), x) -
                            elements_.begin());
}

bool DivisorSet::in_lower_half(std::int64_t k) const { return contains(k) && k <= root_; }

bool DivisorSet::in_upper_half(std::int64_t k) const {
  return contains(k) && k >= n_ / root_;
}

std::vector<std::int64_t> brute_force_divisor_values(std::int64_t n) {
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) values.push_back(n / k);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace cardinal

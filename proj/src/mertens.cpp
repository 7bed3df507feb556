#include "cardinal/mertens.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cardinal {

namespace {

void require_positive_limit(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sieve limit must be >= 1, got " + std::to_string(limit));
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return primes;
}

}  // namespace

MobiusTable::MobiusTable(std::int64_t limit, std::vector<std::int8_t> values)
    : limit_(limit), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != limit_ + 1)
    throw std::invalid_argument("Moebius table size does not match its limit");
}

int MobiusTable::operator()(std::int64_t k) const {
  if (k < 1 || k > limit_)
    throw std::out_of_range("mu(" + std::to_string(k) + ") outside table limit " +
                            std::to_string(limit_));
  return values_[static_cast<std::size_t>(k)];
}

MertensTable::MertensTable(const MobiusTable& mobius)
    : prefix_(static_cast<std::size_t>(mobius.limit() + 1), 0) {
  auto mu = mobius.values();
  for (std::size_t x = 1; x < prefix_.size(); ++x) prefix_[x] = prefix_[x - 1] + mu[x];
}

std::int64_t MertensTable::operator()(std::int64_t x) const {
  if (x < 0 || x > limit())
    throw std::out_of_range("M(" + std::to_string(x) + ") outside table limit " +
                            std::to_string(limit()));
  return prefix_[static_cast<std::size_t>(x)];
}

CoeffVector CoeffVector::ones(std::int64_t length) {
  return {std::vector<std::int64_t>(static_cast<std::size_t>(length), 1)};
}

CoeffVector CoeffVector::zeros(std::int64_t length) {
  return {std::vector<std::int64_t>(static_cast<std::size_t>(length), 0)};
}

CoeffVector CoeffVector::unit(std::int64_t length) {
  CoeffVector v = zeros(length);
  if (length > 0) v.a[0] = 1;
  return v;
}

CoeffVector CoeffVector::mobius(const MobiusTable& table) {
  CoeffVector v = zeros(table.limit());
  auto mu = table.values();
  for (std::int64_t k = 1; k <= table.limit(); ++k) v(k) = mu[static_cast<std::size_t>(k)];
  return v;
}

MobiusTable linear_sieve_mobius(std::int64_t limit) {
  require_positive_limit(limit);
  const auto size = static_cast<std::size_t>(limit + 1);
  std::vector<std::int8_t> mu(size, 0);
  std::vector<std::int64_t> primes;
  std::vector<bool> composite(size, false);
  mu[1] = 1;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (!composite[static_cast<std::size_t>(i)]) {
      primes.push_back(i);
      mu[static_cast<std::size_t>(i)] = -1;
    }
    for (std::int64_t p : primes) {
      if (p > limit / i) break;
      const auto ip = static_cast<std::size_t>(i * p);
      composite[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = static_cast<std::int8_t>(-mu[static_cast<std::size_t>(i)]);
    }
  }
  return MobiusTable(limit, std::move(mu));
}

void for_each_mobius_segment(
    std::int64_t first, std::int64_t last, std::int64_t segment_length,
    const std::function<void(std::int64_t, std::span<const std::int8_t>)>& fn) {
  if (first < 1 || last < first) throw std::invalid_argument("segment range must satisfy 1 <= first <= last");
  if (segment_length < 1) throw std::invalid_argument("segment length must be positive");
  const std::vector<std::int64_t> primes = primes_up_to(isqrt(last));
  std::vector<std::int8_t> mu;
  std::vector<std::int64_t> residual;
  for (std::int64_t lo = first; lo <= last;) {
    const std::int64_t hi = std::min(last, lo + segment_length - 1);
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    mu.assign(len, 1);
    residual.resize(len);
    for (std::size_t t = 0; t < len; ++t) residual[t] = lo + static_cast<std::int64_t>(t);
    for (std::int64_t p : primes) {
      if (p > hi) break;
      std::int64_t start = ((lo + p - 1) / p) * p;
      for (std::int64_t m = start; m <= hi; m += p) {
        const auto t = static_cast<std::size_t>(m - lo);
        mu[t] = static_cast<std::int8_t>(-mu[t]);
        residual[t] /= p;
      }
      if (p <= hi / p) {
        const std::int64_t sq = p * p;
        for (std::int64_t m = ((lo + sq - 1) / sq) * sq; m <= hi; m += sq)
          mu[static_cast<std::size_t>(m - lo)] = 0;
      }
    }
    // At most one prime factor above sqrt(last) remains.
    for (std::size_t t = 0; t < len; ++t)
      if (mu[t] != 0 && residual[t] > 1) mu[t] = static_cast<std::int8_t>(-mu[t]);
    fn(lo, std::span<const std::int8_t>(mu));
    lo = hi + 1;
  }
}

MobiusTable sieve_mobius(std::int64_t limit, const SieveConfig& config) {
  require_positive_limit(limit);
  // The linear sieve also keeps a composite bitmap and a prime list.
  const std::int64_t bytes = limit + 1 + (limit < config.segmented_threshold ? limit / 8 + limit / 2 : 0);
  if (bytes > config.memory_budget_bytes)
    throw ResourceLimitError("Moebius table up to " + std::to_string(limit) + " needs about " +
                             std::to_string(bytes) + " bytes, budget is " +
                             std::to_string(config.memory_budget_bytes));
  if (limit < config.segmented_threshold) return linear_sieve_mobius(limit);

  std::vector<std::int8_t> mu(static_cast<std::size_t>(limit + 1), 0);
  for_each_mobius_segment(1, limit, config.segment_length,
                          [&](std::int64_t lo, std::span<const std::int8_t> seg) {
                            std::copy(seg.begin(), seg.end(), mu.begin() + lo);
                          });
  return MobiusTable(limit, std::move(mu));
}

MertensTable mertens(std::int64_t limit, const SieveConfig& config) {
  return MertensTable(sieve_mobius(limit, config));
}

std::int64_t mertens_value(std::int64_t limit, const SieveConfig& config) {
  require_positive_limit(limit);
  if (limit < config.segmented_threshold) return mertens(limit, config)(limit);
  std::int64_t total = 0;
  for_each_mobius_segment(1, limit, config.segment_length,
                          [&](std::int64_t, std::span<const std::int8_t> seg) {
                            for (std::int8_t v : seg) total += v;
                          });
  return total;
}

std::vector<std::int64_t> block_sums(const DivisorSet& divisors, const CoeffVector& coeffs) {
  if (coeffs.length() < divisors.n())
    throw std::invalid_argument("coefficient vector of length " + std::to_string(coeffs.length()) +
                                " does not cover 1.." + std::to_string(divisors.n()));
  std::vector<std::int64_t> sums;
  sums.reserve(static_cast<std::size_t>(divisors.size()));
  std::int64_t previous = 0;
  for (std::int64_t k : divisors.elements()) {
    std::int64_t total = 0;
    for (std::int64_t x = previous + 1; x <= k; ++x) total += coeffs(x);
    sums.push_back(total);
    previous = k;
  }
  return sums;
}

}  // namespace cardinal

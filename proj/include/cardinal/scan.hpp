#pragma once

// Per-n metric scans over ranges of n: norms of M_n and M~_n against the
// normalizers sqrt(n), sqrt(n) log n and log n, plus the smallest |eigenvalue|
// of U_n. Output rows are always in increasing n regardless of parallelism.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cardinal/mertens.hpp"

namespace cardinal {

enum class Metric {
  m_frob,        // ||M_n||_F
  m_ratio,       // ||M_n||_F / sqrt(n)
  mertens_abs,   // |M(n)| = |(M_n)_{11}|
  mt_frob,       // ||M~_n||_F
  mt_ratio,      // ||M~_n||_F / (sqrt(n) log n)
  mt_max,        // max |(M~_n)_{ij}|
  mt_max_ratio,  // max |(M~_n)_{ij}| / log n
  t_frob,        // ||T_s||_F
  t_ratio,       // ||T_s||_F / sqrt(n)
  min_eig,       // min |lambda(U_n)|
};

std::string_view metric_name(Metric metric);
/// Throws std::invalid_argument for unknown names.
Metric parse_metric(std::string_view name);
/// Comma-separated list of metric names.
std::vector<Metric> parse_metric_list(std::string_view list);
const std::vector<Metric>& all_metrics();

/// One metric at one n. For ratio metrics the reported quantity is `ratio`;
/// for the others the normalizer is 1 and ratio == value.
struct ScanRecord {
  std::int64_t n = 0;
  Metric metric = Metric::m_frob;
  double value = 0.0;
  double normalizer = 1.0;
  double ratio = 0.0;

  double reported() const { return ratio; }
};

struct ScanRow {
  std::int64_t n = 0;
  std::int64_t s = 0;
  std::vector<ScanRecord> records;  // same order as ScanTable::metrics
  std::string error;                // empty unless this n failed
};

struct ScanTable {
  std::vector<Metric> metrics;
  std::vector<ScanRow> rows;

  bool has_errors() const;
};

struct ScanOptions {
  unsigned threads = 1;
  SieveConfig sieve;
};

/// Evaluates the metrics for every n (duplicates removed, sorted). A failure
/// at one n is recorded in that row and the scan continues. Throws
/// std::invalid_argument for an empty range, n < 1 or no metrics.
ScanTable rh_scan(std::vector<std::int64_t> ns, const std::vector<Metric>& metrics,
                  const ScanOptions& options = {});

std::vector<std::int64_t> linear_range(std::int64_t first, std::int64_t last);

/// At least `count` distinct integers in [first, last], spaced geometrically.
std::vector<std::int64_t> log_spaced(std::int64_t first, std::int64_t last, std::int64_t count);

/// Header "n,s,<metric>..." (plus "error" if any row failed), one row per n.
void write_scan_csv(std::ostream& out, const ScanTable& table);
void write_scan_json(std::ostream& out, const ScanTable& table);

/// Inverse of write_scan_csv. Normalizers are recomputed from n, so
/// re-exporting a parsed table reproduces the input bytes.
ScanTable read_scan_csv(std::istream& in);

double metric_normalizer(Metric metric, std::int64_t n);

}  // namespace cardinal

#include "cardinal/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cardinal/deformed.hpp"
#include "cardinal/divisors.hpp"
#include "cardinal/format.hpp"
#include "cardinal/mertens.hpp"
#include "cardinal/spectral.hpp"

namespace cardinal {

namespace {

struct MetricInfo {
  Metric metric;
  std::string_view name;
};

constexpr MetricInfo kMetrics[] = {
    {Metric::m_frob, "m-frob"},   {Metric::m_ratio, "m-ratio"},
    {Metric::mertens_abs, "mertens-abs"}, {Metric::mt_frob, "mt-frob"},
    {Metric::mt_ratio, "mt-ratio"}, {Metric::mt_max, "mt-max"},
    {Metric::mt_max_ratio, "mt-max-ratio"}, {Metric::t_frob, "t-frob"},
    {Metric::t_ratio, "t-ratio"}, {Metric::min_eig, "min-eig"},
};

bool needs_mertens_matrix(Metric m) {
  return m == Metric::m_frob || m == Metric::m_ratio || m == Metric::mertens_abs;
}

bool needs_m_tilde(Metric m) {
  return m == Metric::mt_frob || m == Metric::mt_ratio || m == Metric::mt_max ||
         m == Metric::mt_max_ratio;
}

struct Quantities {
  double m_frob = 0, mertens_abs = 0, mt_frob = 0, mt_max = 0, t_frob = 0, min_eig = 0;
};

double base_value(Metric metric, const Quantities& q) {
  switch (metric) {
    case Metric::m_frob:
    case Metric::m_ratio: return q.m_frob;
    case Metric::mertens_abs: return q.mertens_abs;
    case Metric::mt_frob:
    case Metric::mt_ratio: return q.mt_frob;
    case Metric::mt_max:
    case Metric::mt_max_ratio: return q.mt_max;
    case Metric::t_frob:
    case Metric::t_ratio: return q.t_frob;
    case Metric::min_eig: return q.min_eig;
  }
  return 0;
}

ScanRow evaluate(std::int64_t n, const std::vector<Metric>& metrics, const MertensTable& mertens) {
  ScanRow row;
  row.n = n;
  const DivisorSet divisors(n);
  const Index s = divisors.size();
  row.s = s;
  Quantities q;

  if (std::any_of(metrics.begin(), metrics.end(), needs_mertens_matrix)) {
    // Entries M(floor(n/(k_i k_j))); equal to T U_n^{-1} T entrywise.
    __int128 sum = 0;
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s - i; ++j) {
        const std::int64_t v = mertens((n / divisors[i]) / divisors[j]);
        sum += static_cast<__int128>(v) * v;
      }
    q.m_frob = std::sqrt(static_cast<double>(sum));
    q.mertens_abs = static_cast<double>(std::llabs(mertens(n)));
  }
  if (std::any_of(metrics.begin(), metrics.end(), needs_m_tilde)) {
    const ScaledMatrix scaled = m_tilde_scaled(divisors);
    __int128 sum = 0;
    std::int64_t largest = 0;
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) {
        const std::int64_t v = scaled(i, j);
        sum += static_cast<__int128>(v) * v;
        largest = std::max(largest, v < 0 ? -v : v);
      }
    const long double nn = static_cast<long double>(n);
    q.mt_frob = static_cast<double>(std::sqrt(static_cast<long double>(sum)) / nn);
    q.mt_max = static_cast<double>(static_cast<long double>(largest) / nn);
  }
  q.t_frob = std::sqrt(static_cast<double>(s) * static_cast<double>(s + 1) / 2.0);
  if (std::find(metrics.begin(), metrics.end(), Metric::min_eig) != metrics.end()) {
    Eigen::MatrixXd u(s, s);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) u(i, j) = static_cast<double>((n / divisors[i]) / divisors[j]);
    q.min_eig = eigen_spectrum(u).cwiseAbs().minCoeff();
  }

  for (Metric metric : metrics) {
    ScanRecord r;
    r.n = n;
    r.metric = metric;
    r.value = base_value(metric, q);
    r.normalizer = metric_normalizer(metric, n);
    r.ratio = r.normalizer == 1.0 ? r.value : r.value / r.normalizer;
    row.records.push_back(r);
  }
  return row;
}

}  // namespace

std::string_view metric_name(Metric metric) {
  for (const auto& info : kMetrics)
    if (info.metric == metric) return info.name;
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (const auto& info : kMetrics)
    if (info.name == name) return info.metric;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> parse_metric_list(std::string_view list) {
  std::vector<Metric> metrics;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string_view item = list.substr(start, comma - start);
    if (!item.empty()) {
      const Metric m = parse_metric(item);
      if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
    }
    start = comma + 1;
  }
  if (metrics.empty()) throw std::invalid_argument("metric list is empty");
  return metrics;
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = [] {
    std::vector<Metric> out;
    for (const auto& info : kMetrics) out.push_back(info.metric);
    return out;
  }();
  return metrics;
}

double metric_normalizer(Metric metric, std::int64_t n) {
  const double x = static_cast<double>(n);
  switch (metric) {
    case Metric::m_ratio:
    case Metric::t_ratio: return std::sqrt(x);
    case Metric::mt_ratio: return std::sqrt(x) * std::log(x);
    case Metric::mt_max_ratio: return std::log(x);
    default: return 1.0;
  }
}

bool ScanTable::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return !r.error.empty(); });
}

ScanTable rh_scan(std::vector<std::int64_t> ns, const std::vector<Metric>& metrics,
                  const ScanOptions& options) {
  if (ns.empty()) throw std::invalid_argument("scan range is empty");
  if (metrics.empty()) throw std::invalid_argument("no metrics requested");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.front() < 1) throw std::invalid_argument("scan values must satisfy n >= 1");

  const bool want_mertens = std::any_of(metrics.begin(), metrics.end(), needs_mertens_matrix);
  const MertensTable table = mertens(want_mertens ? ns.back() : 1, options.sieve);

  ScanTable result;
  result.metrics = metrics;
  result.rows.resize(ns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) {
      try {
        result.rows[i] = evaluate(ns[i], metrics, table);
      } catch (const std::exception& e) {
        result.rows[i] = ScanRow{ns[i], 0, {}, e.what()};
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(ns.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

std::vector<std::int64_t> linear_range(std::int64_t first, std::int64_t last) {
  if (first < 1 || last < first) throw std::invalid_argument("range needs 1 <= n0 <= n1");
  std::vector<std::int64_t> ns;
  ns.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t n = first; n <= last; ++n) ns.push_back(n);
  return ns;
}

std::vector<std::int64_t> log_spaced(std::int64_t first, std::int64_t last, std::int64_t count) {
  if (first < 1 || last < first) throw std::invalid_argument("range needs 1 <= n0 <= n1");
  if (count < 1) throw std::invalid_argument("sample count must be positive");
  if (count >= last - first + 1) return linear_range(first, last);
  const double lo = std::log(static_cast<double>(first));
  const double hi = std::log(static_cast<double>(last));
  std::vector<std::int64_t> ns;
  for (std::int64_t points = count; static_cast<std::int64_t>(ns.size()) < count; points += count / 4 + 1) {
    ns.clear();
    for (std::int64_t k = 0; k < points; ++k) {
      const double t = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
      ns.push_back(std::clamp<std::int64_t>(std::llround(std::exp(lo + t * (hi - lo))), first, last));
    }
    ns.push_back(first);
    ns.push_back(last);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  return ns;
}

void write_scan_csv(std::ostream& out, const ScanTable& table) {
  const bool errors = table.has_errors();
  out << "n,s";
  for (Metric m : table.metrics) out << ',' << metric_name(m);
  if (errors) out << ",error";
  out << '\n';
  for (const ScanRow& row : table.rows) {
    out << row.n << ',' << row.s;
    for (std::size_t k = 0; k < table.metrics.size(); ++k) {
      out << ',';
      if (row.error.empty()) out << format_double(row.records[k].reported());
    }
    if (errors) out << ',' << csv_escape(row.error);
    out << '\n';
  }
}

void write_scan_json(std::ostream& out, const ScanTable& table) {
  nlohmann::json doc;
  nlohmann::json names = nlohmann::json::array();
  for (Metric m : table.metrics) names.push_back(std::string(metric_name(m)));
  doc["metrics"] = names;
  nlohmann::json rows = nlohmann::json::array();
  for (const ScanRow& row : table.rows) {
    nlohmann::json r;
    r["n"] = row.n;
    r["s"] = row.s;
    if (!row.error.empty()) {
      r["error"] = row.error;
    } else {
      nlohmann::json values = nlohmann::json::object();
      for (const ScanRecord& rec : row.records) {
        const double v = rec.reported();
        values[std::string(metric_name(rec.metric))] =
            std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
      }
      r["values"] = std::move(values);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

ScanTable read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("scan CSV is empty");
  const std::vector<std::string> header = csv_split(line);
  if (header.size() < 3 || header[0] != "n" || header[1] != "s")
    throw std::invalid_argument("scan CSV header must start with n,s and name at least one metric");
  ScanTable table;
  const bool errors = header.back() == "error";
  const std::size_t metric_end = header.size() - (errors ? 1 : 0);
  for (std::size_t c = 2; c < metric_end; ++c) table.metrics.push_back(parse_metric(header[c]));

  auto parse_int = [](const std::string& field) {
    std::size_t used = 0;
    const long long v = std::stoll(field, &used);
    if (used != field.size()) throw std::invalid_argument("bad integer field '" + field + "'");
    return static_cast<std::int64_t>(v);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = csv_split(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("scan CSV row has " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(header.size()));
    ScanRow row;
    row.n = parse_int(fields[0]);
    row.s = parse_int(fields[1]);
    if (errors) row.error = fields.back();
    if (row.error.empty()) {
      for (std::size_t k = 0; k < table.metrics.size(); ++k) {
        const auto value = parse_double(fields[2 + k]);
        if (!value) throw std::invalid_argument("bad numeric field '" + fields[2 + k] + "'");
        ScanRecord rec;
        rec.n = row.n;
        rec.metric = table.metrics[k];
        rec.normalizer = metric_normalizer(rec.metric, row.n);
        rec.ratio = *value;
        rec.value = rec.normalizer == 1.0 ? *value : *value * rec.normalizer;
        row.records.push_back(rec);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cardinal

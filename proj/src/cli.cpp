#include "cardinal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cardinal/algebra.hpp"
#include "cardinal/cardinal_matrices.hpp"
#include "cardinal/deformed.hpp"
#include "cardinal/divisors.hpp"
#include "cardinal/format.hpp"
#include "cardinal/mertens.hpp"
#include "cardinal/scan.hpp"
#include "cardinal/spectral.hpp"
#include "cardinal/verify.hpp"

#ifndef CARDINAL_VERSION
#define CARDINAL_VERSION "0.0.0"
#endif

namespace cardinal {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

template <typename T>
T parse_env_number(const char* name, T fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string_view text(raw);
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && end == text.data() + text.size(),
          std::string(name) + " must be a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

/// stdout, or a temporary file next to the target that is renamed into place
/// on commit and removed otherwise.
class OutputSink {
 public:
  OutputSink(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {
    if (path_.empty()) return;
    temp_ = path_ + ".partial";
    file_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw UsageError("cannot open '" + path_ + "' for writing");
  }
  OutputSink(const OutputSink&) = delete;
  OutputSink& operator=(const OutputSink&) = delete;
  ~OutputSink() {
    if (!temp_.empty() && !committed_) {
      file_.close();
      std::error_code ignored;
      fs::remove(temp_, ignored);
    }
  }

  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }

  void commit() {
    if (path_.empty()) {
      fallback_.flush();
      return;
    }
    file_.close();
    if (!file_) throw std::runtime_error("failed writing '" + path_ + "'");
    fs::rename(temp_, path_);
    committed_ = true;
  }

 private:
  std::ostream& fallback_;
  std::string path_;
  std::string temp_;
  std::ofstream file_;
  bool committed_ = false;
};

void validate_output_path(const std::string& path) {
  if (path.empty()) return;
  const fs::path target(path);
  require(!fs::is_directory(target), "output path '" + path + "' is a directory");
  const fs::path parent = target.has_parent_path() ? target.parent_path() : fs::path(".");
  require(fs::is_directory(parent), "directory of output path '" + path + "' does not exist");
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed,
                    const std::string& command) {
  const OutputFormat parsed = parse_output_format(format);
  require(std::find(allowed.begin(), allowed.end(), to_string(parsed)) != allowed.end(),
          command + " does not support --format " + format);
}

SieveConfig sieve_config(const RunConfig& config) {
  SieveConfig sieve;
  sieve.memory_budget_bytes = config.memory_budget_bytes;
  return sieve;
}

MatrixLabels labels_for(const std::string& name, const DivisorSet& divisors) {
  return {name, {divisors.elements().begin(), divisors.elements().end()}};
}

// ---------------------------------------------------------------- divisors

void cmd_divisors(const RunConfig& config, std::ostream& out) {
  const DivisorSet divisors(config.n);
  const Index s = divisors.size();
  switch (parse_output_format(config.format)) {
    case OutputFormat::json: {
      nlohmann::json doc;
      doc["n"] = config.n;
      doc["s"] = s;
      doc["root"] = divisors.root();
      doc["elements"] = std::vector<std::int64_t>(divisors.elements().begin(), divisors.elements().end());
      nlohmann::json pairs = nlohmann::json::array();
      for (std::int64_t k : divisors.elements()) pairs.push_back({k, divisors.involution(k)});
      doc["involution"] = std::move(pairs);
      out << doc.dump() << '\n';
      return;
    }
    case OutputFormat::csv:
      out << "i,k,involution\n";
      for (Index i = 0; i < s; ++i)
        out << i + 1 << ',' << divisors[i] << ',' << divisors.involution(divisors[i]) << '\n';
      return;
    case OutputFormat::text: {
      out << "n = " << config.n << ", s = " << s << ", floor(sqrt n) = " << divisors.root() << '\n';
      const std::size_t width = std::to_string(config.n).size();
      out << std::setw(static_cast<int>(std::max<std::size_t>(width, 1))) << "k" << "  "
          << "floor(n/k)\n";
      for (std::int64_t k : divisors.elements())
        out << std::setw(static_cast<int>(width)) << k << "  " << divisors.involution(k) << '\n';
      return;
    }
  }
}

// ----------------------------------------------------------------- mertens

void cmd_mertens(const RunConfig& config, bool table, std::ostream& out) {
  const SieveConfig sieve = sieve_config(config);
  if (!table) {
    const std::int64_t value = mertens_value(config.n, sieve);
    if (parse_output_format(config.format) == OutputFormat::json) {
      out << nlohmann::json{{"N", config.n}, {"M", value}}.dump() << '\n';
    } else {
      out << value << '\n';
    }
    return;
  }
  out << "x,mu,M\n";
  std::int64_t running = 0;
  for_each_mobius_segment(1, config.n, sieve.segment_length,
                          [&](std::int64_t lo, std::span<const std::int8_t> mu) {
                            for (std::size_t t = 0; t < mu.size(); ++t) {
                              running += mu[t];
                              out << lo + static_cast<std::int64_t>(t) << ',' << int{mu[t]} << ','
                                  << running << '\n';
                            }
                          });
}

// ------------------------------------------------------------------ matrix

const std::set<std::string>& matrix_kinds() {
  static const std::set<std::string> kinds{"rho",   "zeta",    "mobius",  "t",
                                           "t-inv", "u",       "u-inv",   "m",
                                           "u-tilde", "u-tilde-plus", "u-tilde-inv", "m-tilde",
                                           "diff"};
  return kinds;
}

const std::set<std::string>& diff_kinds() {
  static const std::set<std::string> kinds{"e", "e-plus", "e-tilde", "w", "z-tilde"};
  return kinds;
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ", ") + item;
  return out;
}

void validate_matrix(const RunConfig& config) {
  const std::string& kind = config.arguments.at(0);
  require(matrix_kinds().count(kind) == 1, "unknown matrix kind '" + kind + "' (expected " + join(matrix_kinds()) + ")");
  const bool has_extra = config.arguments.size() > 1;
  if (kind == "rho") {
    require(has_extra, "matrix rho needs a generator k in S_n");
    std::int64_t k = 0;
    const std::string& text = config.arguments[1];
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    require(ec == std::errc() && end == text.data() + text.size(), "k must be an integer, got '" + text + "'");
    require(DivisorSet(config.n).contains(k),
            "k = " + text + " is not in S_" + std::to_string(config.n));
  } else if (kind == "diff") {
    require(has_extra, "matrix diff needs one of " + join(diff_kinds()));
    require(diff_kinds().count(config.arguments[1]) == 1,
            "unknown difference matrix '" + config.arguments[1] + "' (expected " + join(diff_kinds()) + ")");
  } else {
    require(!has_extra, "matrix " + kind + " takes no extra argument");
  }
}

void cmd_matrix(const RunConfig& config, std::ostream& out) {
  const std::string& kind = config.arguments.at(0);
  const DivisorSet divisors(config.n);
  const Index s = divisors.size();
  const OutputFormat format = parse_output_format(config.format);
  auto emit = [&](const auto& a, const std::string& name) { write_matrix(out, a, format, labels_for(name, divisors)); };

  if (kind == "rho") {
    const std::int64_t k = std::stoll(config.arguments[1]);
    emit(rho(divisors, k), "rho(" + std::to_string(k) + ")");
  } else if (kind == "zeta") {
    emit(zeta_matrix(divisors), "Z");
  } else if (kind == "mobius") {
    emit(mobius_matrix(divisors, sieve_mobius(config.n, sieve_config(config))), "Z^-1");
  } else if (kind == "t") {
    emit(t_matrix<BigInt>(s), "T");
  } else if (kind == "t-inv") {
    emit(t_inverse<BigInt>(s), "T^-1");
  } else if (kind == "u") {
    emit(u_matrix(divisors), "U");
  } else if (kind == "u-inv") {
    emit(u_inverse(divisors), "U^-1");
  } else if (kind == "m") {
    emit(m_matrix_via_mertens(divisors, mertens(config.n, sieve_config(config))), "M");
  } else if (kind == "u-tilde") {
    emit(u_tilde(divisors), "U~");
  } else if (kind == "u-tilde-plus") {
    emit(u_tilde_plus(divisors), "U~+");
  } else if (kind == "u-tilde-inv") {
    emit(u_tilde_inverse(divisors), "U~^-1");
  } else if (kind == "m-tilde") {
    emit(m_tilde(divisors), "M~");
  } else {
    const std::string& which = config.arguments[1];
    if (which == "w" || which == "z-tilde") {
      const ZTildeW zw = z_tilde_and_w(divisors);
      if (which == "w") emit(zw.w, "W");
      else emit(zw.z_tilde, "Z~");
    } else {
      const DifferenceMatrices d = difference_matrices(divisors);
      if (which == "e") emit(d.e, "E");
      else if (which == "e-plus") emit(d.e_plus, "E+");
      else emit(d.e_tilde, "E~");
    }
  }
}

// ------------------------------------------------------------------ verify

bool cmd_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions options;
  options.seed = config.seed;
  options.sieve = sieve_config(config);
  const std::int64_t last = config.n1.value_or(config.n);
  const bool json = parse_output_format(config.format) == OutputFormat::json;
  nlohmann::json ledgers = nlohmann::json::array();
  bool all_passed = true;
  for (std::int64_t n = config.n; n <= last; ++n) {
    const VerifyLedger ledger = verify_n(n, options);
    all_passed = all_passed && ledger.passed();
    if (json) ledgers.push_back(ledger.to_json());
    else out << ledger.to_text();
  }
  if (json) out << (config.n1 ? ledgers : ledgers.at(0)).dump() << '\n';
  return all_passed;
}

// ---------------------------------------------------------------- spectrum

SpectralReport spectrum_of(const RunConfig& config, const std::string& matrix) {
  const DivisorSet divisors(config.n);
  if (matrix == "u") return spectral_report(config.n, u_matrix(divisors));
  if (matrix == "t") return spectral_report(config.n, t_matrix<BigInt>(divisors.size()));
  if (matrix == "m")
    return spectral_report(config.n, m_matrix_via_mertens(divisors, mertens(config.n, sieve_config(config))));
  return spectral_report(config.n, m_tilde(divisors));
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void cmd_spectrum(const RunConfig& config, const std::string& matrix, bool paired, std::ostream& out) {
  const OutputFormat format = parse_output_format(config.format);
  if (paired) {
    const PairedSpectra spectra = paired_spectra(config.n);
    if (format == OutputFormat::json) {
      nlohmann::json doc{{"n", config.n}, {"matrix", "u"}, {"current", as_vector(spectra.current)},
                         {"next", as_vector(spectra.next)}};
      out << doc.dump() << '\n';
      return;
    }
    const char sep = format == OutputFormat::csv ? ',' : ' ';
    out << "index" << sep << "lambda_n" << sep << "lambda_n+1\n";
    const Index rows = std::max(spectra.current.size(), spectra.next.size());
    for (Index i = 0; i < rows; ++i) {
      out << i + 1 << sep;
      if (i < spectra.current.size()) out << format_double(spectra.current(i));
      out << sep;
      if (i < spectra.next.size()) out << format_double(spectra.next(i));
      out << '\n';
    }
    return;
  }

  const SpectralReport report = spectrum_of(config, matrix);
  const EigenProduct product = eigenvalue_product(report.eigenvalues);
  switch (format) {
    case OutputFormat::json: {
      nlohmann::json doc{{"n", report.n},
                         {"s", report.s},
                         {"matrix", matrix},
                         {"frobenius_norm_sq", format_scalar(report.frobenius_norm_sq)},
                         {"frobenius_norm", report.frobenius_norm},
                         {"operator_norm", report.operator_norm},
                         {"min_abs_eigenvalue", report.min_abs_eigenvalue},
                         {"positive", report.positive_count},
                         {"negative", report.negative_count},
                         {"eigenvalue_product", product.value()},
                         {"eigenvalues", as_vector(report.eigenvalues)}};
      out << doc.dump() << '\n';
      return;
    }
    case OutputFormat::csv:
      out << "index,eigenvalue\n";
      for (Index i = 0; i < report.eigenvalues.size(); ++i)
        out << i + 1 << ',' << format_double(report.eigenvalues(i)) << '\n';
      return;
    case OutputFormat::text:
      out << "matrix " << matrix << ", n = " << report.n << ", s = " << report.s << '\n'
          << "frobenius norm^2   " << format_scalar(report.frobenius_norm_sq) << '\n'
          << "frobenius norm     " << format_double(report.frobenius_norm) << '\n'
          << "operator norm      " << format_double(report.operator_norm) << '\n'
          << "min |eigenvalue|   " << format_double(report.min_abs_eigenvalue) << '\n'
          << "signature (+/-)    " << report.positive_count << " / " << report.negative_count << '\n'
          << "eigenvalue product " << format_double(product.value()) << '\n'
          << "eigenvalues\n";
      for (Index i = 0; i < report.eigenvalues.size(); ++i)
        out << "  " << format_double(report.eigenvalues(i)) << '\n';
      return;
  }
}

// ---------------------------------------------------------------- homotopy

void cmd_homotopy(const RunConfig& config, int steps, std::ostream& out) {
  const HomotopyTrace trace = homotopy_track(DivisorSet(config.n), steps);
  if (parse_output_format(config.format) == OutputFormat::json) {
    nlohmann::json snapshots = nlohmann::json::array();
    for (const auto& snap : trace.snapshots)
      snapshots.push_back({{"t", snap.t},
                           {"positive", snap.positive_count},
                           {"negative", snap.negative_count},
                           {"min_abs_eigenvalue", snap.min_abs_eigenvalue},
                           {"flagged", snap.flagged},
                           {"eigenvalues", as_vector(snap.eigenvalues)}});
    nlohmann::json doc{{"n", trace.n},
                       {"s", trace.s},
                       {"steps", steps},
                       {"sign_counts_constant", trace.sign_counts_constant},
                       {"flagged_steps", trace.flagged_steps},
                       {"snapshots", std::move(snapshots)}};
    out << doc.dump() << '\n';
    return;
  }
  out << "t,positive,negative,min_abs,flagged";
  for (Index i = 0; i < trace.s; ++i) out << ",lambda_" << i + 1;
  out << '\n';
  for (const auto& snap : trace.snapshots) {
    out << format_double(snap.t) << ',' << snap.positive_count << ',' << snap.negative_count << ','
        << format_double(snap.min_abs_eigenvalue) << ',' << (snap.flagged ? 1 : 0);
    for (Index i = 0; i < snap.eigenvalues.size(); ++i) out << ',' << format_double(snap.eigenvalues(i));
    out << '\n';
  }
}

// -------------------------------------------------------------------- scan

bool cmd_scan(const RunConfig& config, std::int64_t log_samples, std::ostream& out) {
  std::vector<Metric> metrics;
  for (const auto& name : config.metrics) metrics.push_back(parse_metric(name));
  const std::int64_t last = *config.n1;
  const std::vector<std::int64_t> ns =
      log_samples > 0 ? log_spaced(config.n, last, log_samples) : linear_range(config.n, last);
  ScanOptions options;
  options.threads = config.threads;
  options.sieve = sieve_config(config);
  const ScanTable table = rh_scan(ns, metrics, options);
  if (parse_output_format(config.format) == OutputFormat::json) write_scan_json(out, table);
  else write_scan_csv(out, table);
  return !table.has_errors();
}

void write_manifest(const RunConfig& config, const std::string& path, std::ostream& fallback) {
  OutputSink sink(fallback, path);
  nlohmann::json doc{{"artifact", "cardinal_matrices"}, {"version", artifact_version()}, {"config", config.to_json()}};
  sink.stream() << doc.dump(2) << '\n';
  sink.commit();
}

void report_error(std::ostream& err, int code, std::string_view kind, const std::string& message) {
  nlohmann::json doc{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
  err << doc.dump() << '\n';
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json doc{{"command", command},
                     {"n", n},
                     {"arguments", arguments},
                     {"format", format},
                     {"seed", seed},
                     {"threads", threads},
                     {"memory_budget_bytes", memory_budget_bytes}};
  doc["n1"] = n1 ? nlohmann::json(*n1) : nlohmann::json(nullptr);
  doc["metrics"] = metrics;
  doc["output"] = output_path.empty() ? nlohmann::json(nullptr) : nlohmann::json(output_path);
  return doc;
}

std::string artifact_version() { return CARDINAL_VERSION; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string manifest;

  CLI::App app{"Approximate divisors, Cardinal's matrices and the Mertens function", "cardinal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", artifact_version());
  app.add_option("--manifest", manifest, "Write the resolved configuration as JSON to this path");
  app.add_option("--threads", config.threads, "Worker threads for scans (env CARDINAL_THREADS)");
  app.add_option("--memory-budget", config.memory_budget_bytes,
                 "Byte budget for sieve tables (env CARDINAL_MEMORY_BUDGET)");
  app.add_option("--seed", config.seed, "Seed for randomized property checks");
  app.fallthrough();

  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--format", config.format, "text, csv or json")->default_str(default_format);
    sub->add_option("-o,--out", config.output_path, "Output file (default stdout)");
  };

  auto* divisors_cmd = app.add_subcommand("divisors", "The approximate divisors S_n and the involution");
  divisors_cmd->add_option("n", config.n)->required();
  add_common(divisors_cmd, "text");

  bool table = false;
  auto* mertens_cmd = app.add_subcommand("mertens", "M(N), or the table x, mu(x), M(x) as CSV");
  mertens_cmd->add_option("N", config.n)->required();
  mertens_cmd->add_flag("--table", table, "Emit every x <= N");
  add_common(mertens_cmd, "text");

  std::string kind;
  std::vector<std::string> matrix_extra;
  auto* matrix_cmd = app.add_subcommand("matrix", "Print one of the matrices attached to n");
  matrix_cmd->add_option("kind", kind, join(matrix_kinds()))->required();
  matrix_cmd->add_option("n", config.n)->required();
  matrix_cmd->add_option("extra", matrix_extra, "k for rho; e, e-plus, e-tilde, w or z-tilde for diff");
  add_common(matrix_cmd, "text");

  std::int64_t n1 = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run every identity check for n (or each n in [n, n1])");
  verify_cmd->add_option("n", config.n)->required();
  verify_cmd->add_option("n1", n1);
  add_common(verify_cmd, "text");

  std::string spectrum_matrix = "u";
  bool paired = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and norms of a symmetric matrix");
  spectrum_cmd->add_option("n", config.n)->required();
  spectrum_cmd->add_option("--matrix", spectrum_matrix, "u, m, m-tilde or t");
  spectrum_cmd->add_flag("--paired", paired, "Eigenvalues of U_n next to those of U_{n+1}");
  add_common(spectrum_cmd, "text");

  int steps = 101;
  auto* homotopy_cmd = app.add_subcommand("homotopy", "Track eigenvalues from T to U_n");
  homotopy_cmd->add_option("n", config.n)->required();
  homotopy_cmd->add_option("--steps", steps, "Number of sample points, t = 0 .. 1");
  add_common(homotopy_cmd, "csv");

  std::string metric_list = "m-frob,m-ratio,mt-frob,mt-ratio,mt-max,min-eig";
  std::int64_t log_samples = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Per-n metrics over a range of n");
  scan_cmd->add_option("n0", config.n)->required();
  scan_cmd->add_option("n1", n1)->required();
  scan_cmd->add_option("--metrics", metric_list, "Comma-separated metric names");
  scan_cmd->add_option("--log-samples", log_samples, "Sample this many log-spaced n instead of every n");
  add_common(scan_cmd, "csv");

  try {
    config.threads = parse_env_number<unsigned>("CARDINAL_THREADS", config.threads);
    config.memory_budget_bytes = parse_env_number<std::int64_t>("CARDINAL_MEMORY_BUDGET", config.memory_budget_bytes);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(std::move(reversed));
    } catch (const CLI::Success& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      report_error(err, exit_usage, "usage", e.what());
      return exit_usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    config.command = sub->get_name();
    if (sub->get_option("--format")->count() == 0) config.format = sub->get_option("--format")->get_default_str();

    // Validation: nothing below this block may fail on account of the input.
    require(config.n >= 1, "n must be >= 1, got " + std::to_string(config.n));
    parse_output_format(config.format);
    require(config.threads >= 1, "thread count must be >= 1");
    require(config.memory_budget_bytes >= 1, "memory budget must be positive");
    validate_output_path(config.output_path);
    validate_output_path(manifest);
    require(manifest.empty() || manifest != config.output_path, "--manifest and --out must differ");

    if (config.command == "divisors") {
      require_format(config.format, {"text", "csv", "json"}, "divisors");
    } else if (config.command == "mertens") {
      if (table && sub->get_option("--format")->count() == 0) config.format = "csv";
      require_format(config.format, table ? std::initializer_list<std::string_view>{"csv"}
                                          : std::initializer_list<std::string_view>{"text", "json"},
                     table ? "mertens --table" : "mertens");
      if (table) config.arguments = {"table"};
    } else if (config.command == "matrix") {
      config.arguments = {kind};
      config.arguments.insert(config.arguments.end(), matrix_extra.begin(), matrix_extra.end());
      require(matrix_extra.size() <= 1, "matrix takes at most one extra argument");
      validate_matrix(config);
    } else if (config.command == "verify") {
      require_format(config.format, {"text", "json"}, "verify");
      if (verify_cmd->get_option("n1")->count() > 0) {
        require(n1 >= config.n, "range end n1 must be >= n");
        config.n1 = n1;
      }
    } else if (config.command == "spectrum") {
      require(spectrum_matrix == "u" || spectrum_matrix == "m" || spectrum_matrix == "m-tilde" ||
                  spectrum_matrix == "t",
              "unknown --matrix '" + spectrum_matrix + "' (expected u, m, m-tilde or t)");
      require(!paired || spectrum_matrix == "u", "--paired compares U_n with U_{n+1}; use --matrix u");
      config.arguments = {spectrum_matrix};
      if (paired) config.arguments.push_back("paired");
    } else if (config.command == "homotopy") {
      require_format(config.format, {"csv", "json"}, "homotopy");
      require(steps >= 2, "--steps must be >= 2");
      config.arguments = {"steps=" + std::to_string(steps)};
    } else if (config.command == "scan") {
      require_format(config.format, {"csv", "json"}, "scan");
      require(n1 >= config.n, "range end n1 must be >= n0");
      config.n1 = n1;
      for (Metric m : parse_metric_list(metric_list)) config.metrics.emplace_back(metric_name(m));
      require(log_samples >= 0, "--log-samples must be positive");
      require(log_samples == 0 || log_samples <= n1 - config.n + 1,
              "--log-samples exceeds the number of integers in the range");
      if (log_samples > 0) config.arguments = {"log-samples=" + std::to_string(log_samples)};
    }
  } catch (const UsageError& e) {
    report_error(err, exit_usage, "usage", e.what());
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    report_error(err, exit_usage, "usage", e.what());
    return exit_usage;
  } catch (const ResourceLimitError& e) {
    report_error(err, exit_failure, "resource-limit", e.what());
    return exit_failure;
  }

  try {
    OutputSink sink(out, config.output_path);
    int code = exit_ok;
    if (config.command == "divisors") {
      cmd_divisors(config, sink.stream());
    } else if (config.command == "mertens") {
      cmd_mertens(config, table, sink.stream());
    } else if (config.command == "matrix") {
      cmd_matrix(config, sink.stream());
    } else if (config.command == "verify") {
      if (!cmd_verify(config, sink.stream())) code = exit_ledger_failed;
    } else if (config.command == "spectrum") {
      cmd_spectrum(config, spectrum_matrix, paired, sink.stream());
    } else if (config.command == "homotopy") {
      cmd_homotopy(config, steps, sink.stream());
    } else if (config.command == "scan") {
      if (!cmd_scan(config, log_samples, sink.stream())) {
        code = exit_failure;
        report_error(err, exit_failure, "computation", "scan recorded failures for some n; see the error column");
      }
    }
    sink.commit();
    if (!manifest.empty()) write_manifest(config, manifest, out);
    return code;
  } catch (const UsageError& e) {
    report_error(err, exit_usage, "usage", e.what());
    return exit_usage;
  } catch (const ResourceLimitError& e) {
    report_error(err, exit_failure, "resource-limit", e.what());
    return exit_failure;
  } catch (const std::exception& e) {
    report_error(err, exit_failure, "computation", e.what());
    return exit_failure;
  }
}

}  // namespace cardinal

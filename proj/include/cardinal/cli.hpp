#pragma once

// Command-line front end. Every command validates its inputs before computing
// and writes files through a temporary sibling that is renamed into place.
//
// Exit codes: 0 success, 2 usage error, 3 computation failure, 4 a
// verification ledger contains failures. Errors are reported on stderr as a
// single JSON object {"error": {"code", "kind", "message"}}.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cardinal {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_failure = 3;
inline constexpr int exit_ledger_failed = 4;

/// Resolved configuration of one invocation; written verbatim by --manifest.
struct RunConfig {
  std::string command;
  std::int64_t n = 0;
  std::optional<std::int64_t> n1;
  std::vector<std::string> arguments;  // command-specific extras (matrix kind, ...)
  std::vector<std::string> metrics;
  std::string output_path;  // empty means stdout
  std::string format = "text";
  std::uint64_t seed = 20100101;
  unsigned threads = 1;
  std::int64_t memory_budget_bytes = std::int64_t{2} << 30;

  nlohmann::json to_json() const;
};

std::string artifact_version();

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cardinal

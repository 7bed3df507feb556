#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>

#include "cardinal/cli.hpp"
#include "cardinal/verify.hpp"

using namespace cardinal;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cardinal-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ignored;
    fs::remove_all(path, ignored);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::size_t entries() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(path), fs::directory_iterator{}));
  }
};

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("golden instance passes every check") {
    const VerifyLedger ledger = verify_n(16);
    CHECK(ledger.passed());
    CHECK(ledger.entries.size() >= 20);
    for (const auto& e : ledger.entries) {
      CAPTURE(e.name);
      CHECK(e.status == CheckStatus::pass);
    }
    const auto doc = ledger.to_json();
    CHECK(doc["status"] == "pass");
    CHECK(doc["n"] == 16);
  }

  TEST_CASE("n = 1 passes degenerately") { CHECK(verify_n(1).passed()); }

  TEST_CASE("a batch of n passes") {
    for (std::int64_t n = 2; n <= 130; ++n) {
      const VerifyLedger ledger = verify_n(n);
      CAPTURE(n);
      CAPTURE(ledger.to_text());
      REQUIRE(ledger.passed());
    }
  }

  TEST_CASE("caps turn checks into skips") {
    VerifyOptions options;
    options.commutativity_cap = 10;
    options.brute_force_cap = 10;
    const VerifyLedger ledger = verify_n(50, options);
    CHECK(ledger.passed());
    std::size_t skipped = 0;
    for (const auto& e : ledger.entries) skipped += e.status == CheckStatus::skipped ? 1 : 0;
    CHECK(skipped == 2);
  }

  TEST_CASE("a failing entry makes the ledger fail") {
    VerifyLedger ledger;
    ledger.n = 3;
    ledger.entries.push_back({"ok", CheckStatus::pass, "", std::nullopt});
    ledger.entries.push_back({"bad", CheckStatus::fail, "differs at (2,1)", EntryLocation{1, 0}});
    CHECK_FALSE(ledger.passed());
    const auto doc = ledger.to_json();
    CHECK(doc["status"] == "fail");
    CHECK(doc["checks"][1]["first_failure"] == nlohmann::json::array({2, 1}));
    CHECK(ledger.to_text().find("FAIL") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("verify 16") {
    const CliResult r = cli({"verify", "16"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("overall: pass") != std::string::npos);
    CHECK(r.err.empty());
  }

  TEST_CASE("verify a range as JSON") {
    const CliResult r = cli({"verify", "100", "110", "--format", "json"});
    CHECK(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 11);
    for (const auto& ledger : doc) CHECK(ledger["status"] == "pass");
  }

  TEST_CASE("matrix u 16 as CSV") {
    const CliResult r = cli({"matrix", "u", "16", "--format", "csv"});
    CHECK(r.code == exit_ok);
    CHECK(r.out ==
          "16,8,5,4,3,2,1\n8,4,2,2,1,1,0\n5,2,1,1,1,0,0\n4,2,1,1,0,0,0\n3,1,1,0,0,0,0\n2,1,0,0,0,0,0\n1,0,0,0,0,0,0\n");
  }

  TEST_CASE("every matrix kind renders") {
    for (const std::vector<std::string>& args :
         std::vector<std::vector<std::string>>{{"rho", "16", "2"}, {"zeta", "16"}, {"mobius", "16"}, {"t", "16"},
                                               {"t-inv", "16"}, {"u", "16"}, {"u-inv", "16"}, {"m", "16"},
                                               {"u-tilde", "16"}, {"u-tilde-plus", "16"}, {"u-tilde-inv", "16"},
                                               {"m-tilde", "16"}, {"diff", "16", "e"}, {"diff", "16", "e-plus"},
                                               {"diff", "16", "e-tilde"}, {"diff", "16", "w"},
                                               {"diff", "16", "z-tilde"}}) {
      std::vector<std::string> full{"matrix"};
      full.insert(full.end(), args.begin(), args.end());
      for (const char* format : {"text", "csv", "json"}) {
        auto with_format = full;
        with_format.insert(with_format.end(), {"--format", format});
        const CliResult r = cli(with_format);
        CAPTURE(args[0]);
        CAPTURE(format);
        CHECK(r.code == exit_ok);
        CHECK_FALSE(r.out.empty());
      }
    }
    CHECK(cli({"matrix", "diff", "16", "w", "--format", "csv"}).out.find("-1/3,-2/3,-1/9,-1/3,8/15,0,0") !=
          std::string::npos);
  }

  TEST_CASE("scan 10 1000 has 991 rows") {
    const CliResult r = cli({"scan", "10", "1000", "--metrics", "m-ratio"});
    CHECK(r.code == exit_ok);
    CHECK(line_count(r.out) == 992);
    CHECK(r.out.rfind("n,s,m-ratio\n", 0) == 0);
  }

  TEST_CASE("scan output is independent of the thread count") {
    const CliResult a = cli({"scan", "10", "3000", "--log-samples", "40", "--threads", "1"});
    const CliResult b = cli({"--threads", "3", "scan", "10", "3000", "--log-samples", "40"});
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    const CliResult j = cli({"scan", "10", "100", "--format", "json", "--metrics", "mt-ratio"});
    CHECK(nlohmann::json::parse(j.out)["rows"].size() == 91);
  }

  TEST_CASE("divisors and mertens") {
    CHECK(cli({"divisors", "12", "--format", "json"}).out.find("\"elements\":[1,2,3,4,6,12]") != std::string::npos);
    const auto doc = nlohmann::json::parse(cli({"divisors", "16", "--format", "json"}).out);
    CHECK(doc["s"] == 7);
    CHECK(doc["involution"][1] == nlohmann::json::array({2, 8}));
    CHECK(cli({"mertens", "1000"}).out == "2\n");
    const CliResult table = cli({"mertens", "--table", "12"});
    CHECK(table.code == exit_ok);
    CHECK(table.out.rfind("x,mu,M\n1,1,1\n2,-1,0\n", 0) == 0);
    CHECK(table.out.find("12,0,-2\n") != std::string::npos);
  }

  TEST_CASE("spectrum and homotopy") {
    const CliResult s = cli({"spectrum", "16", "--matrix", "m", "--format", "json"});
    CHECK(s.code == exit_ok);
    CHECK(nlohmann::json::parse(s.out)["frobenius_norm_sq"] == "34");
    CHECK(cli({"spectrum", "15", "--paired", "--format", "csv"}).code == exit_ok);
    CHECK(cli({"spectrum", "16", "--matrix", "m-tilde"}).code == exit_ok);
    const CliResult h = cli({"homotopy", "16", "--steps", "11"});
    CHECK(h.code == exit_ok);
    CHECK(line_count(h.out) == 12);
  }

  TEST_CASE("files are written whole, with a manifest") {
    TempDir dir;
    const std::string out = dir.file("scan.csv");
    const std::string manifest = dir.file("run.json");
    const CliResult r = cli({"scan", "10", "50", "--metrics", "mt-max,mt-frob", "--out", out, "--manifest", manifest,
                             "--seed", "7"});
    CHECK(r.code == exit_ok);
    CHECK(line_count(slurp(out)) == 42);
    const auto doc = nlohmann::json::parse(slurp(manifest));
    CHECK(doc["version"] == artifact_version());
    CHECK(doc["config"]["command"] == "scan");
    CHECK(doc["config"]["n1"] == 50);
    CHECK(doc["config"]["seed"] == 7);
    CHECK(doc["config"]["metrics"] == nlohmann::json::array({"mt-max", "mt-frob"}));
    CHECK(dir.entries() == 2);

    const CliResult again = cli({"scan", "10", "50", "--metrics", "mt-max,mt-frob", "--out", out});
    CHECK(again.code == exit_ok);
    CHECK(line_count(slurp(out)) == 42);
  }

  TEST_CASE("usage errors exit 2 and leave no files") {
    TempDir dir;
    const std::string out = dir.file("x.csv");
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"matrix", "u", "0", "--out", out},
             {"matrix", "rho", "16", "7", "--out", out},
             {"matrix", "rho", "16", "--out", out},
             {"matrix", "zorro", "16", "--out", out},
             {"matrix", "diff", "16", "q", "--out", out},
             {"matrix", "u", "16", "--format", "xml", "--out", out},
             {"scan", "100", "10", "--out", out},
             {"scan", "10", "100", "--metrics", "bogus", "--out", out},
             {"scan", "10", "20", "--log-samples", "50", "--out", out},
             {"scan", "10", "20", "--format", "text", "--out", out},
             {"verify", "20", "10", "--out", out},
             {"homotopy", "16", "--steps", "1", "--out", out},
             {"spectrum", "16", "--matrix", "q", "--out", out},
             {"spectrum", "16", "--matrix", "m", "--paired", "--out", out},
             {"divisors", "abc", "--out", out},
             {"divisors", "16", "--out", dir.file("missing/dir.csv")},
             {"frobnicate", "16"},
             {}}) {
      const CliResult r = cli(args);
      CAPTURE(r.err);
      CHECK(r.code == exit_usage);
      const auto err = nlohmann::json::parse(r.err);
      CHECK(err["error"]["code"] == exit_usage);
      CHECK(dir.entries() == 0);
    }
  }

  TEST_CASE("resource limits exit 3") {
    TempDir dir;
    const CliResult r = cli({"--memory-budget", "64", "matrix", "m", "100", "--out", dir.file("m.csv")});
    CHECK(r.code == exit_failure);
    CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "resource-limit");
    CHECK(dir.entries() == 0);
  }

  TEST_CASE("help and version") {
    CHECK(cli({"--help"}).code == exit_ok);
    CHECK(cli({"--version"}).out.find(artifact_version()) != std::string::npos);
  }

  TEST_CASE("the installed binary reports exit codes") {
    const std::string bin = CARDINAL_CLI_PATH;
    auto status = [&](const std::string& args) {
      const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
      return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("verify 16") == 0);
    CHECK(status("matrix u 0") == 2);
    CHECK(status("scan 5 1") == 2);
    CHECK(::setenv("CARDINAL_THREADS", "zero", 1) == 0);
    CHECK(status("divisors 5") == 2);
    CHECK(::setenv("CARDINAL_THREADS", "2", 1) == 0);
    CHECK(status("scan 10 40 --metrics min-eig") == 0);
    ::unsetenv("CARDINAL_THREADS");
    CHECK(::setenv("CARDINAL_MEMORY_BUDGET", "16", 1) == 0);
    CHECK(status("mertens 1000") == 3);
    ::unsetenv("CARDINAL_MEMORY_BUDGET");
  }
}

// Acceptance run: one PASS/FAIL line per criterion, full-size fixtures.
// Usage: acceptance <path to the lochaus executable> [work dir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "lochaus/io.hpp"
#include "lochaus/verify.hpp"

using namespace lochaus;
using verify::CheckResult;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::cout << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << "  " << title << ": " << detail << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// Joins rows into one verdict: all must pass.
bool combine(const std::vector<CheckResult>& rows, std::string& detail) {
  bool pass = true;
  for (const auto& r : rows) {
    pass = pass && r.pass;
    detail += (detail.empty() ? "" : "; ") + r.name + " [" + r.fixture + "] " + (r.pass ? "pass" : "FAIL") + " " +
              r.detail;
  }
  return pass;
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <lochaus executable> [work dir]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path work = argc > 2 ? argv[2] : std::filesystem::temp_directory_path() / "lochaus_acceptance";
  std::filesystem::create_directories(work);

  verify::Suite suite({false, 20240601});

  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = suite.oracle_equivalence();
    const double t = seconds_since(t0);
    report(1, "oracle equivalence, 200 random spaces, < 60 s", r.pass && t < 60.0, r.detail + ", " + secs(t));
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> rows{suite.dimension_recovery(suite.grid(), 0.05),
                                  suite.dimension_recovery(suite.cantor(), 0.05),
                                  suite.dimension_recovery(suite.sierpinski(), 0.10)};
    const double t = seconds_since(t0);
    std::string detail;
    const bool pass = combine(rows, detail);
    report(2, "dimension recovery, < 5 min", pass && t < 300.0, detail + "; " + secs(t));
  }
  {
    std::string detail;
    const bool pass = combine({suite.balls_vs_subsets()}, detail);
    report(3, "lambda^s(4 delta) <= 4^s H^s(delta), 50 random spaces", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.s_monotonicity()}, detail);
    report(4, "cost nonincreasing in s, diam 1, delta <= 1/2", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.local_global()}, detail);
    report(5, "sup of local field = global dimension on glue", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.local_equivalence()}, detail);
    report(6, "lambda_loc <= 4^dim H_loc on every fixture", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.ahlfors_regularity(), suite.q_equals_dimloc(), suite.nu_lambda()}, detail);
    report(7, "Q = dim_loc and nu ~ lambda^Qc", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.sandwich(), suite.log_holder_bound()}, detail);
    report(8, "gauge sandwich and log-Holder bound", pass, detail);
  }
  {
    std::string detail;
    const bool pass = combine({suite.vitali()}, detail);
    report(9, "Vitali 5r subfamily, 500 families", pass, detail);
  }
  {
    const auto a_txt = (work / "verify_t1.txt").string(), a_json = (work / "verify_t1.json").string();
    const auto b_txt = (work / "verify_t8.txt").string(), b_json = (work / "verify_t8.json").string();
    const int ra = run(cli + " --threads 1 verify --quick --out " + a_json + " > " + a_txt);
    const int rb = run(cli + " --threads 8 verify --quick --out " + b_json + " > " + b_txt);
    bool same = false;
    std::string detail;
    try {
      same = io::read_file(a_txt) == io::read_file(b_txt) && io::read_file(a_json) == io::read_file(b_json);
      detail = std::string("table and JSON ") + (same ? "byte-identical" : "differ") + " for --threads 1 and 8";
    } catch (const std::exception& e) {
      detail = e.what();
    }
    detail += ", exit codes " + std::to_string(ra) + "/" + std::to_string(rb);
    report(10, "verify --quick is deterministic across thread counts", same && ra == 0 && rb == 0, detail);
  }

  {
    // Not a numbered criterion; printed for completeness.
    const auto r = suite.absolute_continuity();
    std::cout << "supplementary " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " [" << r.fixture
              << "]: " << r.detail << std::endl;
    std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
    return failures == 0 && r.pass ? 0 : 1;
  }
}

// Acceptance suite: runs every invariant sweep on the reference grid and prints
// one PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <fmt/format.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "tofq/checks.hpp"

#ifndef TOFQ_CLI_PATH
#error "TOFQ_CLI_PATH must point at the tofq executable"
#endif

namespace fs = std::filesystem;
using tofq::checks::CheckResult;

namespace {

const std::map<int, std::string> kTitles = {
    {1, "analytic vs oracle correlations"},
    {2, "characteristic-function identities"},
    {3, "Heisenberg mean relations"},
    {4, "reconstruction fidelity"},
    {5, "scheme equivalence and setting counts"},
    {6, "shot statistics"},
    {7, "unitarity and determinism"},
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Two seeded CLI runs of the shot-noise pipelines must agree byte for byte.
CheckResult cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / fmt::format("tofq_acceptance_{}", ::getpid());
  fs::create_directories(dir);
  const fs::path cfg = dir / "seeded.json";
  std::ofstream(cfg) << R"({"scheme": {"kind": "separable"},
    "shots": {"shots_per_setting": 50000, "seed": 7, "budget_per_lambda": 40000, "budget_seeds": [1, 2, 3, 4]}})";

  std::size_t compared = 0, differing = 0;
  std::string detail;
  for (const char* run : {"a", "b"}) {
    for (const char* cmd : {"reconstruct", "budget", "correlate"}) {
      const std::string line = fmt::format("{} {} --config {} --out {} --threads {} >/dev/null 2>&1", TOFQ_CLI_PATH, cmd,
                                           cfg.string(), (dir / run).string(), run[0] == 'a' ? 1 : 2);
      const int status = std::system(line.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) detail += fmt::format("{} exited {}; ", cmd, status);
    }
  }
  for (const char* file : {"reconstruct.csv", "char_fn.csv", "budget.csv", "budget_meta.json", "correlate.csv"}) {
    ++compared;
    const auto a = slurp(dir / "a" / file), b = slurp(dir / "b" / file);
    if (a.empty() || a != b) {
      ++differing;
      detail += fmt::format("{} differs; ", file);
    }
  }
  fs::remove_all(dir);
  if (detail.empty()) detail = fmt::format("{} files identical across thread counts", compared);
  return tofq::checks::make_result(7, "seeded CLI outputs byte-identical", static_cast<double>(differing), 0.0, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto results = tofq::checks::run_all(tofq::reference_grid(), 1);
  results.push_back(cli_determinism());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::map<int, bool> verdict;
  for (const auto& r : results) {
    verdict.try_emplace(r.criterion, true);
    verdict[r.criterion] = verdict[r.criterion] && r.pass;
    std::cout << fmt::format("    [{}] {:<50} dev={:<10.3e} tol={:<8.1e} {}{}\n", r.criterion, r.name,
                             r.max_deviation, r.tolerance, r.pass ? "ok" : "FAILED",
                             r.detail.empty() ? "" : "  (" + r.detail + ")");
  }
  std::cout << "\n";
  bool all = true;
  for (const auto& [criterion, title] : kTitles) {
    const auto it = verdict.find(criterion);
    const bool pass = it != verdict.end() && it->second;
    all = all && pass;
    std::cout << fmt::format("criterion {}: {:<40} {}\n", criterion, title, pass ? "PASS" : "FAIL");
  }
  std::cout << fmt::format("\n{} ({:.1f} s)\n", all ? "all criteria PASS" : "some criteria FAIL", seconds);
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}

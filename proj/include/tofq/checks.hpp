#pragma once

// Cross-module invariant sweeps shared by the `oracle-check` subcommand and
// the acceptance test binary. Each check returns its worst deviation over
// the sweep together with the tolerance it is judged against.

#include <string>
#include <vector>

#include "tofq/core_states.hpp"

namespace tofq::checks {

struct CheckResult {
  int criterion = 0;
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Same-sign comparison: passes when deviation <= tolerance.
CheckResult make_result(int criterion, std::string name, double deviation, double tolerance, std::string detail = {});

/// Gaussian test packets used by the sweeps: x0 = 0, p0 in {0, 2}, sigma = 1/sqrt(2).
std::vector<ParticleState> sweep_packets(const GridSpec& grid);

std::vector<CheckResult> analytic_oracle_equivalence(const GridSpec& grid);
std::vector<CheckResult> char_fn_identities(const GridSpec& grid);
std::vector<CheckResult> heisenberg_means(const GridSpec& grid);
std::vector<CheckResult> reconstruction_fidelity(const GridSpec& grid);
std::vector<CheckResult> scheme_equivalence(const GridSpec& grid);
std::vector<CheckResult> shot_statistics(const GridSpec& grid, unsigned threads);
std::vector<CheckResult> unitarity(const GridSpec& grid);

/// Every sweep above, in criterion order.
std::vector<CheckResult> run_all(const GridSpec& grid, unsigned threads);

}  // namespace tofq::checks

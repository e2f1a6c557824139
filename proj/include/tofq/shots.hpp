#pragma once

// Finite-ensemble simulation of the +-1 valued pointer correlation
// measurements. Every (lambda, setting) pair draws its counts from its own
// generator whose seed is derived from the plan seed, so results do not
// depend on evaluation order or thread count.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tofq/reconstruct.hpp"

namespace tofq {

inline constexpr std::string_view kRngAlgorithm =
    "std::mt19937_64 seeded by splitmix64(seed ^ stream-id); counts from std::binomial_distribution";
inline constexpr std::string_view kRngVersion = "tofq-rng/1";

struct ShotPlan {
  std::uint64_t shots_per_setting = 1000;
  MeasurementScheme scheme = MeasurementScheme::entangled();
  std::uint64_t rng_seed = 0;

  void validate() const;
  std::size_t settings_per_lambda() const { return scheme.settings_per_lambda(); }
};

/// Splitmix64 finalizer applied to seed and stream coordinates.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// P(+1) = (1 + mean)/2 for a +-1 valued observable.
double outcome_probability(double mean);

struct MeanEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Draws k successes out of `shots` with probability outcome_probability(true_mean)
/// and returns 2k/shots - 1 together with 2 sqrt(p(1-p)/shots).
MeanEstimate estimate_mean(double true_mean, std::uint64_t shots, std::uint64_t seed);
inline MeanEstimate estimate_mean(double true_mean, const ShotPlan& plan) {
  return estimate_mean(true_mean, plan.shots_per_setting, plan.rng_seed);
}

/// Shot-noise estimates of C_P(lambda); true setting means come from `engine`.
CharFnSamples noisy_char_fn(const ParticleState& particle, const ScheduleTemplate& schedule_template,
                            const std::vector<double>& lambdas, const ShotPlan& plan,
                            Engine engine = Engine::Analytic, unsigned threads = 1);

std::uint64_t total_shots(const ShotPlan& plan, std::size_t lambda_count);

struct BudgetRow {
  std::string scheme;  // separable | entangled | entangled_equal_per_setting
  std::uint64_t seed = 0;
  double lambda_max = 0.0;
  double delta_lambda = 0.0;
  std::uint64_t total_shots = 0;
  double l1 = 0.0;
  double linf = 0.0;
};

struct BudgetSummary {
  std::string scheme;
  std::uint64_t shots_per_setting = 0;
  double mean_l1 = 0.0;
  double stddev_l1 = 0.0;
};

struct BudgetReport {
  std::vector<BudgetRow> rows;
  std::vector<BudgetSummary> summary;

  const BudgetSummary& summary_for(std::string_view scheme) const;
};

struct BudgetConfig {
  ScheduleTemplate schedule_template;
  double lambda_max = 8.0;
  double delta_lambda = 0.05;
  /// Shots spent per lambda value, shared among the scheme's settings.
  /// Zero means exact (analytic) samples.
  std::uint64_t total_shots_per_lambda = 400000;
  std::vector<std::uint64_t> seeds;
  PGrid p_grid;
  unsigned threads = 1;
};

/// For each seed, reconstructs the momentum density with both schemes at an
/// equal total budget (separable: budget/4 per setting, entangled: budget/2),
/// plus entangled at the separable per-setting count, and records the error
/// against the exact density.
BudgetReport budget_comparison(const ParticleState& particle, const BudgetConfig& config);

void write_budget_csv(std::ostream& out, const BudgetReport& report);

struct ScalingPoint {
  std::uint64_t shots = 0;
  double empirical_stddev = 0.0;  // spread of the estimates over seeds
  double mean_reported_stderr = 0.0;
  double sample_mean = 0.0;
};

/// Repeats estimate_mean over `seed_count` derived seeds for every shot count.
std::vector<ScalingPoint> stderr_scaling(double true_mean, const std::vector<std::uint64_t>& shot_counts,
                                         std::size_t seed_count, std::uint64_t base_seed);

}  // namespace tofq

#include "tofq/shots.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "tofq/parallel.hpp"

namespace tofq {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t scheme_stream(const MeasurementScheme& scheme) {
  if (scheme.kind == MeasurementScheme::Kind::Separable) return 1;
  return scheme.which == Correlator::XX ? 2 : 3;
}

}  // namespace

void ShotPlan::validate() const {
  if (shots_per_setting < 1) fail(ErrorKind::InvalidArgument, "shots_per_setting must be at least 1");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

double outcome_probability(double mean) {
  if (!std::isfinite(mean) || std::abs(mean) > 1.0 + 1e-12)
    fail(ErrorKind::MeanOutOfRange, fmt::format("observable mean {} outside [-1, 1]", mean));
  return std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
}

MeanEstimate estimate_mean(double true_mean, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) fail(ErrorKind::InvalidArgument, "need at least one shot");
  const double p = outcome_probability(true_mean);
  std::mt19937_64 engine(splitmix64(seed));
  std::binomial_distribution<std::uint64_t> counts(shots, p);
  const std::uint64_t k = counts(engine);
  const double n = static_cast<double>(shots);
  const double p_hat = static_cast<double>(k) / n;
  return {2.0 * p_hat - 1.0, 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / n)};
}

std::uint64_t total_shots(const ShotPlan& plan, std::size_t lambda_count) {
  return plan.shots_per_setting * plan.settings_per_lambda() * lambda_count;
}

CharFnSamples noisy_char_fn(const ParticleState& particle, const ScheduleTemplate& schedule_template,
                            const std::vector<double>& lambdas, const ShotPlan& plan, Engine engine,
                            unsigned threads) {
  plan.validate();
  std::vector<CouplingSchedule> schedules;
  schedules.reserve(lambdas.size());
  for (double lambda : lambdas) schedules.push_back(schedule_template.schedule_for(lambda));

  const auto settings = measurement_settings(plan.scheme);
  const std::uint64_t stream = scheme_stream(plan.scheme);
  CharFnSamples out;
  out.source = SampleSource::Shots;
  out.lambdas = lambdas;
  out.values.resize(lambdas.size());
  out.stderr_re.resize(lambdas.size());
  out.stderr_im.resize(lambdas.size());
  parallel_for(lambdas.size(), threads, [&](std::size_t i) {
    const auto means = setting_means(particle, schedules[i], settings, engine);
    double re = 0.0, im = 0.0, var_re = 0.0, var_im = 0.0;
    for (std::size_t s = 0; s < settings.size(); ++s) {
      const auto est = estimate_mean(means[s], plan.shots_per_setting, derive_seed(plan.rng_seed, stream, i, s));
      if (settings[s].part == Part::Real) {
        re += est.estimate;
        var_re += est.std_error * est.std_error;
      } else {
        im += est.estimate;
        var_im += est.std_error * est.std_error;
      }
    }
    out.values[i] = {re, im};
    out.stderr_re[i] = std::sqrt(var_re);
    out.stderr_im[i] = std::sqrt(var_im);
  });
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Budget comparison

const BudgetSummary& BudgetReport::summary_for(std::string_view scheme) const {
  for (const auto& s : summary)
    if (s.scheme == scheme) return s;
  fail(ErrorKind::InvalidArgument, "no summary for scheme '" + std::string(scheme) + "'");
}

BudgetReport budget_comparison(const ParticleState& particle, const BudgetConfig& config) {
  if (config.seeds.empty()) fail(ErrorKind::InvalidArgument, "budget comparison needs at least one seed");
  const auto lambdas = make_lambda_grid(config.lambda_max, config.delta_lambda);
  const auto p_points = config.p_grid.points();
  const auto reference = exact_momentum_density(particle, p_points);
  const std::uint64_t budget = config.total_shots_per_lambda;
  if (budget != 0 && budget < 4)
    fail(ErrorKind::InvalidArgument, "a non-zero budget must cover at least one shot per separable setting");

  struct Arm {
    std::string label;
    MeasurementScheme scheme;
    std::uint64_t per_setting;
  };
  const std::vector<Arm> arms = {
      {"separable", MeasurementScheme::separable(), budget / 4},
      {"entangled", MeasurementScheme::entangled(), budget / 2},
      {"entangled_equal_per_setting", MeasurementScheme::entangled(), budget / 4},
  };

  const std::size_t n_seeds = config.seeds.size();
  BudgetReport report;
  report.rows.resize(arms.size() * n_seeds);
  parallel_for(report.rows.size(), config.threads, [&](std::size_t task) {
    const Arm& arm = arms[task / n_seeds];
    const std::uint64_t seed = config.seeds[task % n_seeds];
    CharFnSamples samples;
    std::uint64_t shots_used = 0;
    if (budget == 0) {
      samples = sample_char_fn(particle, config.schedule_template, arm.scheme, lambdas, Engine::Analytic);
    } else {
      ShotPlan plan{arm.per_setting, arm.scheme, seed};
      samples = noisy_char_fn(particle, config.schedule_template, lambdas, plan);
      shots_used = total_shots(plan, lambdas.size());
    }
    auto estimate = invert_to_momentum_distribution(extend_hermitian(samples), p_points);
    const auto metrics = compare_distributions(estimate, reference);
    report.rows[task] = {arm.label, seed, config.lambda_max, config.delta_lambda, shots_used, metrics.l1, metrics.linf};
  });

  for (std::size_t a = 0; a < arms.size(); ++a) {
    BudgetSummary s{arms[a].label, arms[a].per_setting, 0.0, 0.0};
    for (std::size_t k = 0; k < n_seeds; ++k) s.mean_l1 += report.rows[a * n_seeds + k].l1;
    s.mean_l1 /= static_cast<double>(n_seeds);
    if (n_seeds > 1) {
      double ss = 0.0;
      for (std::size_t k = 0; k < n_seeds; ++k) {
        const double d = report.rows[a * n_seeds + k].l1 - s.mean_l1;
        ss += d * d;
      }
      s.stddev_l1 = std::sqrt(ss / static_cast<double>(n_seeds - 1));
    }
    report.summary.push_back(s);
  }
  return report;
}

void write_budget_csv(std::ostream& out, const BudgetReport& report) {
  out << "scheme,seed,lambda_max,delta_lambda,total_shots,L1,Linf\n";
  for (const auto& r : report.rows)
    out << fmt::format("{},{},{:.17g},{:.17g},{},{:.17g},{:.17g}\n", r.scheme, r.seed, r.lambda_max, r.delta_lambda,
                       r.total_shots, r.l1, r.linf);
}

// ---------------------------------------------------------------------------

std::vector<ScalingPoint> stderr_scaling(double true_mean, const std::vector<std::uint64_t>& shot_counts,
                                         std::size_t seed_count, std::uint64_t base_seed) {
  if (seed_count < 2) fail(ErrorKind::InvalidArgument, "scaling study needs at least two seeds");
  std::vector<ScalingPoint> points;
  for (std::size_t c = 0; c < shot_counts.size(); ++c) {
    ScalingPoint pt{shot_counts[c], 0.0, 0.0, 0.0};
    std::vector<double> estimates(seed_count);
    for (std::size_t s = 0; s < seed_count; ++s) {
      const auto est = estimate_mean(true_mean, shot_counts[c], derive_seed(base_seed, c, s));
      estimates[s] = est.estimate;
      pt.mean_reported_stderr += est.std_error;
      pt.sample_mean += est.estimate;
    }
    const double n = static_cast<double>(seed_count);
    pt.sample_mean /= n;
    pt.mean_reported_stderr /= n;
    double ss = 0.0;
    for (double e : estimates) ss += (e - pt.sample_mean) * (e - pt.sample_mean);
    pt.empirical_stddev = std::sqrt(ss / (n - 1.0));
    points.push_back(pt);
  }
  return points;
}

}  // namespace tofq

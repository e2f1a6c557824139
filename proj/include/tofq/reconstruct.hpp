#pragma once

// Sampling of the characteristic function C_P(lambda) through pointer
// correlations, Hermitian extension to negative lambda, and trapezoidal
// Fourier inversion to the momentum density.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tofq/analytic.hpp"

namespace tofq {

enum class Engine { Analytic, Oracle };
enum class SampleSource { Analytic, Oracle, Shots };

std::string_view to_string(Engine engine);
std::string_view to_string(SampleSource source);
SampleSource sample_source_from_string(std::string_view name);

/// Kick strength, first kick time, read-out time and qubit frequency. The
/// second kick time follows from the requested lambda.
struct ScheduleTemplate {
  double kappa = 2.0;
  double t1 = 0.5;
  double T = 3.0;
  double omega = 1.0;

  /// t2 = t1 + lambda / (2 kappa); throws ScheduleInfeasible unless t1 < t2 < T.
  CouplingSchedule schedule_for(double lambda) const;
};

/// lambda_k = k * delta_lambda for k = 1..round(lambda_max / delta_lambda).
std::vector<double> make_lambda_grid(double lambda_max, double delta_lambda);

struct CharFnSamples {
  std::vector<double> lambdas;
  CVector values;
  SampleSource source = SampleSource::Analytic;
  std::vector<double> stderr_re;  // empty when not applicable
  std::vector<double> stderr_im;

  bool has_stderr() const { return !stderr_re.empty(); }
  /// Structural checks plus |C| <= 1 + 3 stderr (+1e-10 slack). The bound is
  /// only enforced for analytic and oracle samples.
  void validate() const;
  /// Indices violating the |C| bound.
  std::vector<std::size_t> bound_violations() const;
};

/// Samples on a symmetric grid -lambda_max..lambda_max including lambda = 0.
struct SymmetricCharFn {
  std::vector<double> lambdas;
  CVector values;
};

/// Mean of every setting of `settings` for one schedule. The oracle engine
/// propagates each distinct pointer state once and reads both correlators.
std::vector<double> setting_means(const ParticleState& particle, const CouplingSchedule& schedule,
                                  const std::vector<MeasurementSetting>& settings, Engine engine);

CharFnSamples sample_char_fn(const ParticleState& particle, const ScheduleTemplate& schedule_template,
                             const MeasurementScheme& scheme, const std::vector<double>& lambdas, Engine engine,
                             unsigned threads = 1);

SymmetricCharFn extend_hermitian(const CharFnSamples& samples);

struct PGrid {
  double p_min = -10.0;
  double p_max = 10.0;
  std::size_t n_points = 2001;

  void validate() const;
  double dp() const { return (p_max - p_min) / static_cast<double>(n_points - 1); }
  std::vector<double> points() const;
};

struct DistributionMetrics {
  double l1 = 0.0;
  double linf = 0.0;
  double total_variation = 0.0;
  std::vector<double> peak_offsets;
};

struct MomentumDistribution {
  std::vector<double> p_grid;
  std::vector<double> density;
  double truncation_bound = 0.0;  // |C(lambda_max)|, tail size of the truncated integral
  double max_imag_residue = 0.0;
  std::vector<std::string> warnings;
  std::optional<DistributionMetrics> metrics;

  double mass() const;
};

struct InversionOptions {
  bool clip_negative = false;
  double negative_warning_threshold = -1e-6;
};

/// density(p) = (1/2pi) * trapezoid over lambda of C(lambda) exp(-i lambda p).
MomentumDistribution invert_to_momentum_distribution(const SymmetricCharFn& samples, const std::vector<double>& p_grid,
                                                     const InversionOptions& options = {});

/// Densities must share one uniform p grid.
DistributionMetrics compare_distributions(const MomentumDistribution& estimate, const MomentumDistribution& reference);

/// |psi(p)|^2 on arbitrary momenta by direct quadrature over the position grid.
MomentumDistribution exact_momentum_density(const ParticleState& particle, const std::vector<double>& p_grid);

void write_char_fn_csv(std::ostream& out, const CharFnSamples& samples);
CharFnSamples read_char_fn_csv(std::istream& in);

}  // namespace tofq

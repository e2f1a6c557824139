#include "tofq/checks.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "tofq/analytic.hpp"
#include "tofq/oracle.hpp"
#include "tofq/reconstruct.hpp"
#include "tofq/shots.hpp"

namespace tofq::checks {
namespace {

constexpr double kSigma = 1.0 / std::numbers::sqrt2;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct NamedPointer {
  std::string name;
  QubitPairState state;
};

std::vector<NamedPointer> sweep_pointers() {
  return {{"|00>", QubitPairState::basis(0, 0)},
          {"sep(0,0)", make_separable_optimal(0.0, 0.0)},
          {"sep(0,pi/2)", make_separable_optimal(0.0, kHalfPi)},
          {"bell(0)", make_bell(0.0)},
          {"bell(pi/2)", make_bell(kHalfPi)}};
}

std::vector<CouplingSchedule> sweep_schedules() {
  std::vector<CouplingSchedule> out;
  for (double kappa : {0.5, 1.0})
    for (double t2 : {1.5, 2.0, 3.0})
      for (double omega : {0.0, 1.0}) out.push_back({kappa, 1.0, t2, 4.0, omega});
  return out;
}

ScheduleTemplate reconstruction_template() { return {2.0, 0.5, 3.0, 1.0}; }

PGrid reconstruction_p_grid() { return {-10.0, 10.0, 2001}; }

}  // namespace

CheckResult make_result(int criterion, std::string name, double deviation, double tolerance, std::string detail) {
  return {criterion, std::move(name), deviation, tolerance, deviation <= tolerance, std::move(detail)};
}

std::vector<ParticleState> sweep_packets(const GridSpec& grid) {
  return {make_gaussian(grid, 0.0, 0.0, kSigma), make_gaussian(grid, 0.0, 2.0, kSigma)};
}

std::vector<CheckResult> analytic_oracle_equivalence(const GridSpec& grid) {
  double worst_xx = 0.0, worst_yy = 0.0;
  std::string where;
  std::size_t cases = 0;
  for (const auto& packet : sweep_packets(grid)) {
    for (const auto& schedule : sweep_schedules()) {
      for (const auto& [name, qubits] : sweep_pointers()) {
        const auto analytic = correlations(packet, qubits, schedule);
        const auto final_state = run_schedule(packet, qubits, schedule);
        const double dxx = std::abs(analytic.xx - expect_two_qubit(final_state, TwoQubitObservable::xx()));
        const double dyy = std::abs(analytic.yy - expect_two_qubit(final_state, TwoQubitObservable::yy()));
        if (std::max(dxx, dyy) > std::max(worst_xx, worst_yy))
          where = fmt::format("worst at p0={:.3g} kappa={} t2={} omega={} {}", packet.mean_momentum(), schedule.kappa,
                              schedule.t2, schedule.omega, name);
        worst_xx = std::max(worst_xx, dxx);
        worst_yy = std::max(worst_yy, dyy);
        ++cases;
      }
    }
  }
  return {make_result(1, "analytic-oracle corr_xx", worst_xx, 1e-6, fmt::format("{} cases; {}", cases, where)),
          make_result(1, "analytic-oracle corr_yy", worst_yy, 1e-6, fmt::format("{} cases; {}", cases, where))};
}

std::vector<CheckResult> char_fn_identities(const GridSpec& grid) {
  std::vector<ParticleState> packets = sweep_packets(grid);
  packets.push_back(make_gaussian(grid, 3.0, 0.0, kSigma));
  packets.push_back(make_superposition({{1.0, make_gaussian(grid, 0.0, 2.0, kSigma)},
                                        {1.0, make_gaussian(grid, 0.0, -2.0, kSigma)}}));
  packets.push_back(make_superposition({{1.0, make_gaussian(grid, -2.0, 1.0, 0.8)},
                                        {cplx{0.0, 0.5}, make_gaussian(grid, 3.0, -1.5, 1.2)}}));

  double hermitian = 0.0, dual = 0.0;
  for (const auto& packet : packets) {
    for (double lambda : {0.05, 0.3, 1.0, 2.5, 4.0, 8.0}) {
      const cplx plus = char_fn(packet, lambda);
      hermitian = std::max(hermitian, std::abs(char_fn(packet, -lambda) - std::conj(plus)));
      dual = std::max(dual, std::abs(plus - char_fn_momentum(packet, lambda)));
    }
  }

  const auto samples = sample_char_fn(packets[1], reconstruction_template(), MeasurementScheme::entangled(),
                                      make_lambda_grid(8.0, 0.05), Engine::Analytic);
  const auto extended = extend_hermitian(samples);
  const cplx at_zero = extended.values[extended.values.size() / 2];
  const bool zero_exact = at_zero == cplx{1.0, 0.0} && extended.lambdas[extended.lambdas.size() / 2] == 0.0;

  return {make_result(2, "C(0) == 1 after extension", zero_exact ? 0.0 : std::abs(at_zero - 1.0), 0.0),
          make_result(2, "Hermitian symmetry C(-l) = C(l)*", hermitian, 1e-12),
          make_result(2, "dual-route char_fn (overlap vs momentum)", dual, 1e-8,
                      fmt::format("{} packets x 6 lambdas", packets.size()))};
}

std::vector<CheckResult> heisenberg_means(const GridSpec& grid) {
  double worst_p = 0.0, worst_x = 0.0, worst_z = 0.0;
  const std::vector<CouplingSchedule> schedules = {{1.0, 1.0, 2.0, 4.0, 1.0}, {0.5, 0.5, 2.5, 3.5, 0.0}};
  std::vector<ParticleState> packets = sweep_packets(grid);
  packets.push_back(make_gaussian(grid, 3.0, -1.0, 0.9));
  for (const auto& packet : packets) {
    const double x0 = packet.mean_position();
    const double p0 = packet.mean_momentum();
    for (const auto& s : schedules) {
      for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
          const double z1 = b1 == 0 ? 1.0 : -1.0;
          const double z2 = b2 == 0 ? 1.0 : -1.0;
          const auto observer = [&](std::string_view, const CompositeState& st) {
            worst_z = std::max(worst_z, std::abs(expect_two_qubit(st, TwoQubitObservable::z1()) - z1));
            worst_z = std::max(worst_z, std::abs(expect_two_qubit(st, TwoQubitObservable::z2()) - z2));
          };
          const auto final_state = run_schedule(packet, QubitPairState::basis(b1, b2), s, observer);
          const double p_expected = p0 - s.kappa * z1 - s.kappa * z2;
          const double x_expected = x0 + p0 * s.T - s.kappa * (s.T - s.t1) * z1 - s.kappa * (s.T - s.t2) * z2;
          worst_p = std::max(worst_p, std::abs(expect_particle(final_state, ParticleObservable::P) - p_expected));
          worst_x = std::max(worst_x, std::abs(expect_particle(final_state, ParticleObservable::X) - x_expected));
        }
      }
    }
  }
  return {make_result(3, "<P(T)> = <P> - k<z1> - k<z2>", worst_p, 1e-8),
          make_result(3, "<X(T)> = <X> + <P>T - k(T-t1)<z1> - k(T-t2)<z2>", worst_x, 1e-8),
          make_result(3, "<z_k> constant through the run", worst_z, 1e-12)};
}

std::vector<CheckResult> reconstruction_fidelity(const GridSpec& grid) {
  const auto lambdas = make_lambda_grid(8.0, 0.05);
  const auto p_points = reconstruction_p_grid().points();
  const double dp = reconstruction_p_grid().dp();

  const auto gaussian = make_gaussian(grid, 0.0, 2.0, kSigma);
  const auto samples =
      sample_char_fn(gaussian, reconstruction_template(), MeasurementScheme::entangled(), lambdas, Engine::Analytic);
  const auto estimate = invert_to_momentum_distribution(extend_hermitian(samples), p_points);
  MomentumDistribution exact;
  exact.p_grid = p_points;
  for (double p : p_points) exact.density.push_back(std::exp(-(p - 2.0) * (p - 2.0)) / std::sqrt(std::numbers::pi));
  const auto metrics = compare_distributions(estimate, exact);

  const auto bimodal = make_superposition({{1.0, make_gaussian(grid, 0.0, 2.0, kSigma)},
                                           {1.0, make_gaussian(grid, 0.0, -2.0, kSigma)}});
  const auto bi_samples =
      sample_char_fn(bimodal, reconstruction_template(), MeasurementScheme::entangled(), lambdas, Engine::Analytic);
  const auto bi_estimate = invert_to_momentum_distribution(extend_hermitian(bi_samples), p_points);
  // Locate the highest sample on each side of p = 0.
  double worst_offset = 0.0;
  std::string peaks;
  for (double target : {-2.0, 2.0}) {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t j = 0; j < p_points.size(); ++j) {
      if ((target < 0) != (p_points[j] < 0)) continue;
      if (!found || bi_estimate.density[j] > bi_estimate.density[best]) best = j;
      found = true;
    }
    worst_offset = std::max(worst_offset, std::abs(p_points[best] - target));
    peaks += fmt::format(" {:.4f}", p_points[best]);
  }

  return {make_result(4, "Gaussian p0=2 reconstruction L1", metrics.l1, 1e-3),
          make_result(4, "bimodal peaks at +-2 (offset vs dp)", worst_offset, dp, "peaks at" + peaks)};
}

std::vector<CheckResult> scheme_equivalence(const GridSpec& grid) {
  const auto lambdas = make_lambda_grid(8.0, 0.05);
  const auto p_points = reconstruction_p_grid().points();
  double worst_density = 0.0;
  for (const auto& packet : sweep_packets(grid)) {
    const auto sep = sample_char_fn(packet, reconstruction_template(), MeasurementScheme::separable(), lambdas,
                                    Engine::Analytic);
    const auto ent = sample_char_fn(packet, reconstruction_template(), MeasurementScheme::entangled(), lambdas,
                                    Engine::Analytic);
    const auto d_sep = invert_to_momentum_distribution(extend_hermitian(sep), p_points);
    const auto d_ent = invert_to_momentum_distribution(extend_hermitian(ent), p_points);
    for (std::size_t j = 0; j < p_points.size(); ++j)
      worst_density = std::max(worst_density, std::abs(d_sep.density[j] - d_ent.density[j]));
  }

  const double settings_dev =
      std::abs(static_cast<double>(MeasurementScheme::separable().settings_per_lambda()) - 4.0) +
      std::abs(static_cast<double>(MeasurementScheme::entangled().settings_per_lambda()) - 2.0) +
      std::abs(static_cast<double>(measurement_settings(MeasurementScheme::separable()).size()) - 4.0) +
      std::abs(static_cast<double>(measurement_settings(MeasurementScheme::entangled()).size()) - 2.0);

  double bell_analytic = 0.0, bell_oracle = 0.0;
  for (const auto& packet : sweep_packets(grid)) {
    for (const auto& schedule : sweep_schedules()) {
      for (double phi : {0.0, kHalfPi, 1.3}) {
        const auto bell = make_bell(phi);
        const auto c = correlations(packet, bell, schedule);
        bell_analytic = std::max(bell_analytic, std::abs(c.xx - c.yy));
        const auto final_state = run_schedule(packet, bell, schedule);
        bell_oracle = std::max(bell_oracle, std::abs(expect_two_qubit(final_state, TwoQubitObservable::xx()) -
                                                     expect_two_qubit(final_state, TwoQubitObservable::yy())));
      }
    }
  }
  return {make_result(5, "separable vs entangled reconstruction", worst_density, 1e-12),
          make_result(5, "settings per lambda (4 separable, 2 entangled)", settings_dev, 0.0),
          make_result(5, "Bell corr_xx = corr_yy (analytic)", bell_analytic, 1e-14),
          make_result(5, "Bell corr_xx = corr_yy (oracle)", bell_oracle, 1e-8)};
}

std::vector<CheckResult> shot_statistics(const GridSpec& grid, unsigned threads) {
  const std::vector<std::uint64_t> shot_counts = {100, 1000, 10000, 100000, 1000000};
  const auto points = stderr_scaling(0.0, shot_counts, 500, 20211027);
  double worst_empirical = 0.0, worst_reported = 0.0;
  std::string detail;
  for (const auto& pt : points) {
    const double root_n = std::sqrt(static_cast<double>(pt.shots));
    // At mean 0 the single-shot standard deviation is exactly 1.
    worst_empirical = std::max(worst_empirical, std::abs(pt.empirical_stddev * root_n - 1.0));
    worst_reported = std::max(worst_reported, std::abs(pt.mean_reported_stderr * root_n - 1.0));
    detail += fmt::format(" N={}:{:.3f}", pt.shots, pt.empirical_stddev * root_n);
  }

  BudgetConfig budget;
  budget.schedule_template = reconstruction_template();
  budget.total_shots_per_lambda = 400000;
  for (std::uint64_t s = 1; s <= 20; ++s) budget.seeds.push_back(s);
  budget.p_grid = reconstruction_p_grid();
  budget.threads = threads;
  const auto report = budget_comparison(make_gaussian(grid, 0.0, 2.0, kSigma), budget);
  const auto& sep = report.summary_for("separable");
  const auto& ent = report.summary_for("entangled");

  return {make_result(6, "stderr * sqrt(N) (empirical, 500 seeds)", worst_empirical, 0.2, detail),
          make_result(6, "stderr * sqrt(N) (reported)", worst_reported, 0.2),
          make_result(6, "equal budget: mean L1 entangled - separable", ent.mean_l1 - sep.mean_l1, 0.0,
                      fmt::format("entangled {:.4g} +- {:.2g}, separable {:.4g} +- {:.2g}", ent.mean_l1, ent.stddev_l1,
                                  sep.mean_l1, sep.stddev_l1))};
}

std::vector<CheckResult> unitarity(const GridSpec& grid) {
  double worst = 0.0;
  for (const auto& packet : sweep_packets(grid)) {
    for (const auto& schedule : sweep_schedules()) {
      for (const auto& [name, qubits] : sweep_pointers()) {
        const auto observer = [&](std::string_view, const CompositeState& st) {
          worst = std::max(worst, std::abs(st.total_norm() - 1.0));
        };
        run_schedule(packet, qubits, schedule, observer);
      }
    }
  }
  return {make_result(7, "composite norm drift per run", worst, 1e-12)};
}

std::vector<CheckResult> run_all(const GridSpec& grid, unsigned threads) {
  using Section = std::vector<CheckResult> (*)(const GridSpec&, unsigned);
  struct Entry {
    int criterion;
    const char* name;
    Section run;
  };
  const Entry sections[] = {
      {1, "analytic vs oracle correlations", [](const GridSpec& g, unsigned) { return analytic_oracle_equivalence(g); }},
      {2, "characteristic-function identities", [](const GridSpec& g, unsigned) { return char_fn_identities(g); }},
      {3, "Heisenberg mean relations", [](const GridSpec& g, unsigned) { return heisenberg_means(g); }},
      {4, "reconstruction fidelity", [](const GridSpec& g, unsigned) { return reconstruction_fidelity(g); }},
      {5, "scheme equivalence", [](const GridSpec& g, unsigned) { return scheme_equivalence(g); }},
      {6, "shot statistics", [](const GridSpec& g, unsigned t) { return shot_statistics(g, t); }},
      {7, "unitarity", [](const GridSpec& g, unsigned) { return unitarity(g); }},
  };
  std::vector<CheckResult> all;
  for (const auto& section : sections) {
    // A guard tripping inside a sweep is a failed invariant, not a crash.
    try {
      auto part = section.run(grid, threads);
      all.insert(all.end(), part.begin(), part.end());
    } catch (const Error& e) {
      CheckResult r{section.criterion, section.name, INFINITY, 0.0, false,
                    fmt::format("{}: {}", to_string(e.kind()), e.what())};
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace tofq::checks

#include "tofq/analytic.hpp"

#include <cmath>
#include <numbers>

namespace tofq {
namespace {

void check_shift(const GridSpec& grid, double shift) {
  if (!std::isfinite(shift) || !(std::abs(shift) < 0.5 * grid.width()))
    fail(ErrorKind::LambdaOutOfRange, "translation " + std::to_string(shift) +
                                          " exceeds half the grid width " + std::to_string(0.5 * grid.width()));
}

// psi(x + shift) via exp(i shift k) in the spectral domain.
CVector translated(const ParticleState& particle, double shift) {
  return spectral::apply_spectral_phase(particle.amplitudes(), particle.grid().dx(),
                                        [shift](double k) { return std::polar(1.0, shift * k); });
}

}  // namespace

EtaMuDecomposition EtaMuDecomposition::from_schedule(const CouplingSchedule& schedule) {
  return {schedule.lambda(), 4.0 * schedule.kappa, 2.0 * schedule.kappa * (schedule.t1 + schedule.t2),
          2.0 * schedule.omega * schedule.T};
}

cplx char_fn(const ParticleState& particle, double lambda) {
  return weyl_expectation(particle, 0.0, lambda);
}

cplx char_fn_momentum(const ParticleState& particle, double lambda) {
  check_shift(particle.grid(), lambda);
  const auto rep = momentum_representation(particle);
  cplx sum{};
  for (std::size_t j = 0; j < rep.amplitudes.size(); ++j)
    sum += std::norm(rep.amplitudes[j]) * std::polar(1.0, lambda * rep.p(j));
  return sum * rep.dp;
}

cplx weyl_expectation(const ParticleState& particle, double alpha, double beta) {
  const GridSpec& grid = particle.grid();
  check_shift(grid, beta);
  const auto psi = particle.amplitudes();
  const CVector shifted = beta == 0.0 ? CVector(psi.begin(), psi.end()) : translated(particle, beta);
  cplx sum{};
  for (std::size_t j = 0; j < psi.size(); ++j)
    sum += std::conj(psi[j]) * std::polar(1.0, alpha * grid.x(j)) * shifted[j];
  return std::polar(1.0, 0.5 * alpha * beta) * sum * grid.dx();
}

CorrelationPair correlations(const ParticleState& particle, const QubitPairState& qubits,
                             const CouplingSchedule& schedule) {
  schedule.validate();
  const auto d = EtaMuDecomposition::from_schedule(schedule);
  const cplx odd = 2.0 * qubits.e01() * std::conj(qubits.e10());
  const cplx even = 2.0 * std::conj(qubits.e00()) * qubits.e11();

  const double eta_term = odd == cplx{} ? 0.0 : std::real(odd * char_fn(particle, d.lambda));
  double mu_term = 0.0;
  if (even != cplx{})
    mu_term = std::real(even * std::polar(1.0, d.mu_phase) * weyl_expectation(particle, d.mu_alpha, d.mu_beta));
  return {eta_term + mu_term, eta_term - mu_term};
}

double corr_xx(const ParticleState& particle, const QubitPairState& qubits, const CouplingSchedule& schedule) {
  return correlations(particle, qubits, schedule).xx;
}

double corr_yy(const ParticleState& particle, const QubitPairState& qubits, const CouplingSchedule& schedule) {
  return correlations(particle, qubits, schedule).yy;
}

QubitPairState make_separable_optimal(double phi1, double phi2) {
  const cplx a1 = std::polar(1.0, phi1);
  const cplx a2 = std::polar(1.0, phi2);
  return QubitPairState::from_amplitudes(0.5, 0.5 * a2, 0.5 * a1, 0.5 * a1 * a2);
}

QubitPairState make_bell(double phi) {
  const double r = 1.0 / std::numbers::sqrt2;
  return QubitPairState::from_amplitudes(0.0, r, r * std::polar(1.0, phi), 0.0);
}

double scheme_value(const ParticleState& particle, const CouplingSchedule& schedule, const SeparableSetting& setting) {
  const auto c = correlations(particle, make_separable_optimal(setting.phi1, setting.phi2), schedule);
  return c.xx + c.yy;
}

double scheme_value(const ParticleState& particle, const CouplingSchedule& schedule, const EntangledSetting& setting) {
  const auto c = correlations(particle, make_bell(setting.phi), schedule);
  return setting.which == Correlator::XX ? c.xx : c.yy;
}

std::vector<MeasurementSetting> measurement_settings(const MeasurementScheme& scheme) {
  constexpr double quarter_turn = 0.5 * std::numbers::pi;
  if (scheme.kind == MeasurementScheme::Kind::Separable) {
    // phi1 - phi2 = 0 gives Re C, phi1 - phi2 = pi/2 gives Im C.
    const auto re_state = make_separable_optimal(0.0, 0.0);
    const auto im_state = make_separable_optimal(quarter_turn, 0.0);
    return {{re_state, Correlator::XX, Part::Real},
            {re_state, Correlator::YY, Part::Real},
            {im_state, Correlator::XX, Part::Imag},
            {im_state, Correlator::YY, Part::Imag}};
  }
  return {{make_bell(0.0), scheme.which, Part::Real}, {make_bell(quarter_turn), scheme.which, Part::Imag}};
}

}  // namespace tofq

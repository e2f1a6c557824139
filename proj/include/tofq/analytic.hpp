#pragma once

// Closed-form pointer correlations. After the two kicks the XX and YY
// correlators act on the particle through two unitaries: exp(i eta) with
// eta = lambda P in the odd-parity pointer sector {01, 10}, and exp(i mu)
// with mu = 4 kappa X + 2 kappa (t1 + t2) P + 2 omega T in the even sector
// {00, 11}. Only the first carries pure momentum information.

#include <vector>

#include "tofq/core_states.hpp"

namespace tofq {

struct EtaMuDecomposition {
  double lambda = 0.0;    // momentum prefactor in eta
  double mu_alpha = 0.0;  // position prefactor in mu
  double mu_beta = 0.0;   // momentum prefactor in mu
  double mu_phase = 0.0;  // scalar part of mu

  static EtaMuDecomposition from_schedule(const CouplingSchedule& schedule);
};

/// <exp(i lambda P)> evaluated as the overlap \int psi*(x) psi(x + lambda) dx,
/// with the translation done spectrally. |lambda| must stay below half the
/// grid width.
cplx char_fn(const ParticleState& particle, double lambda);

/// Same quantity as char_fn, integrated over the momentum density instead.
cplx char_fn_momentum(const ParticleState& particle, double lambda);

/// <exp(i(alpha X + beta P))> = exp(i alpha beta / 2) \int psi*(x) e^{i alpha x} psi(x + beta) dx.
cplx weyl_expectation(const ParticleState& particle, double alpha, double beta);

struct CorrelationPair {
  double xx = 0.0;
  double yy = 0.0;
};

/// Both correlators from one evaluation of C_P(lambda) and <exp(i mu)>.
CorrelationPair correlations(const ParticleState& particle, const QubitPairState& qubits,
                             const CouplingSchedule& schedule);

double corr_xx(const ParticleState& particle, const QubitPairState& qubits, const CouplingSchedule& schedule);
double corr_yy(const ParticleState& particle, const QubitPairState& qubits, const CouplingSchedule& schedule);

/// (|0> + e^{i phi1}|1>) (x) (|0> + e^{i phi2}|1>) / 2.
QubitPairState make_separable_optimal(double phi1, double phi2);

/// (|01> + e^{i phi}|10>) / sqrt(2).
QubitPairState make_bell(double phi);

enum class Correlator { XX, YY };
enum class Part { Real, Imag };

struct SeparableSetting {
  double phi1 = 0.0;
  double phi2 = 0.0;
};
struct EntangledSetting {
  double phi = 0.0;
  Correlator which = Correlator::XX;
};

/// Separable: corr_xx + corr_yy = Re{C e^{i(phi2 - phi1)}}.
double scheme_value(const ParticleState& particle, const CouplingSchedule& schedule, const SeparableSetting& setting);
/// Entangled: a single correlator = Re{C e^{-i phi}}.
double scheme_value(const ParticleState& particle, const CouplingSchedule& schedule, const EntangledSetting& setting);

/// A measurement scheme for the full characteristic function. Separable
/// pointers need four ensemble settings per lambda, Bell pointers two.
struct MeasurementScheme {
  enum class Kind { Separable, Entangled };
  Kind kind = Kind::Entangled;
  Correlator which = Correlator::XX;  // entangled only

  static MeasurementScheme separable() { return {Kind::Separable, Correlator::XX}; }
  static MeasurementScheme entangled(Correlator which = Correlator::XX) { return {Kind::Entangled, which}; }
  std::size_t settings_per_lambda() const { return kind == Kind::Separable ? 4 : 2; }
};

/// One ensemble measurement: prepare `qubits`, measure `observable`, and
/// add the mean into the real or imaginary part of C_P(lambda).
struct MeasurementSetting {
  QubitPairState qubits;
  Correlator observable;
  Part part;
};

std::vector<MeasurementSetting> measurement_settings(const MeasurementScheme& scheme);

}  // namespace tofq

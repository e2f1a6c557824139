#pragma once

// Domain types shared by every module: the position grid, particle and
// pointer states, the kick schedule and the four-branch composite state.
// All quantities are dimensionless (hbar = M = 1, lengths in units of the
// chosen scaling length).

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "tofq/error.hpp"
#include "tofq/spectral.hpp"

namespace tofq {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kQubitNormTolerance = 1e-12;
inline constexpr double kBoundaryTailGuard = 1e-12;

/// Uniform periodic grid x_j = x_min + j*dx, j = 0..n-1, dx = (x_max-x_min)/n.
struct GridSpec {
  std::size_t n_points = 4096;
  double x_min = -60.0;
  double x_max = 60.0;

  void validate() const;
  double dx() const { return (x_max - x_min) / static_cast<double>(n_points); }
  double width() const { return x_max - x_min; }
  double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
  std::vector<double> positions() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// The reference grid used for the analytic/oracle cross-checks.
inline GridSpec reference_grid() { return GridSpec{4096, -60.0, 60.0}; }

/// Sum |a_j|^2 dx.
double grid_norm(const GridSpec& grid, std::span<const cplx> amplitudes);

class ParticleState {
 public:
  /// Takes ownership of already normalized samples; throws if the norm is off.
  static ParticleState from_amplitudes(GridSpec grid, CVector amplitudes);

  /// Normalizes the samples before validating them.
  static ParticleState normalized(GridSpec grid, CVector amplitudes);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t j) const { return amplitudes_[j]; }

  double mean_position() const;
  double mean_momentum() const;

 private:
  ParticleState(GridSpec grid, CVector amplitudes)
      : grid_(grid), amplitudes_(std::move(amplitudes)) {}

  GridSpec grid_;
  CVector amplitudes_;
};

/// Two-pointer register amplitudes, stored in basis order 00, 01, 10, 11
/// with the first pointer as the high bit.
class QubitPairState {
 public:
  static QubitPairState from_amplitudes(cplx e00, cplx e01, cplx e10, cplx e11);
  static QubitPairState basis(int bit1, int bit2);

  cplx amplitude(int bit1, int bit2) const { return amps_[index(bit1, bit2)]; }
  cplx e00() const { return amps_[0]; }
  cplx e01() const { return amps_[1]; }
  cplx e10() const { return amps_[2]; }
  cplx e11() const { return amps_[3]; }
  const std::array<cplx, 4>& amplitudes() const { return amps_; }

  static constexpr std::size_t index(int bit1, int bit2) {
    return static_cast<std::size_t>(2 * bit1 + bit2);
  }

 private:
  explicit QubitPairState(std::array<cplx, 4> amps) : amps_(amps) {}
  std::array<cplx, 4> amps_;
};

/// Kick times t1 < t2, read-out time T, kick strength kappa, qubit
/// transition frequency omega.
struct CouplingSchedule {
  double kappa = 1.0;
  double t1 = 1.0;
  double t2 = 2.0;
  double T = 3.0;
  double omega = 0.0;

  void validate() const;
  /// Argument of the characteristic function probed by this schedule.
  double lambda() const { return 2.0 * kappa * (t2 - t1); }
  double kick_time(int pointer) const;
};

/// Particle wave function resolved on the four pointer basis states.
class CompositeState {
 public:
  using Branches = std::array<CVector, 4>;

  static CompositeState product(const ParticleState& particle, const QubitPairState& qubits);
  /// Wraps evolved branches; validates shape and unit total norm.
  static CompositeState from_branches(GridSpec grid, Branches branches);

  const GridSpec& grid() const { return grid_; }
  const CVector& branch(std::size_t index) const { return branches_[index]; }
  const CVector& branch(int bit1, int bit2) const {
    return branches_[QubitPairState::index(bit1, bit2)];
  }
  const Branches& branches() const { return branches_; }

  double total_norm() const;
  /// Norm of each branch, i.e. the computational-basis populations.
  std::array<double, 4> populations() const;

 private:
  CompositeState(GridSpec grid, Branches branches)
      : grid_(grid), branches_(std::move(branches)) {}

  GridSpec grid_;
  Branches branches_;
};

ParticleState make_gaussian(const GridSpec& grid, double x0, double p0, double sigma);

ParticleState make_superposition(const std::vector<std::pair<cplx, ParticleState>>& terms);

/// psi(p) = (2 pi)^{-1/2} \int psi(x) exp(-i p x) dx sampled on the
/// conjugate grid p_j = p_min + j*dp, p_min = -(n/2) dp, dp = 2 pi/(n dx).
struct MomentumRepresentation {
  double p_min = 0.0;
  double dp = 0.0;
  CVector amplitudes;

  double p(std::size_t j) const { return p_min + static_cast<double>(j) * dp; }
  std::vector<double> momenta() const;
  std::vector<double> density() const;
};

MomentumRepresentation momentum_representation(const ParticleState& state);
MomentumRepresentation momentum_representation(const GridSpec& grid, std::span<const cplx> amplitudes);

/// Inverse of momentum_representation back onto the position grid.
CVector position_representation(const GridSpec& grid, const MomentumRepresentation& rep);

/// Accumulated kick kappa*theta(t - t_k), with theta(0) = 1.
double coefficient_a(const CouplingSchedule& schedule, int pointer, double t);

/// Accumulated displacement kappa*(t - t_k)*theta(t - t_k).
double coefficient_b(const CouplingSchedule& schedule, int pointer, double t);

}  // namespace tofq

#pragma once

// Brute-force Schrodinger-picture evolution of particle (x) two pointers.
// The Hamiltonian is piecewise exactly solvable: free segments are applied
// as exact kinetic phases in momentum space plus qubit phases, and the delta
// couplings as instantaneous position-dependent phases. Nothing here uses the
// closed-form results of the analytic module.

#include <array>
#include <functional>
#include <string_view>

#include "tofq/core_states.hpp"

namespace tofq {

inline constexpr double kBoundaryDensityGuard = 1e-8;
inline constexpr double kBoundaryStripFraction = 0.02;

class TwoQubitObservable {
 public:
  using Matrix = std::array<std::array<cplx, 4>, 4>;

  /// Throws unless the matrix is Hermitian within 1e-14.
  static TwoQubitObservable from_matrix(const Matrix& m);

  static TwoQubitObservable xx();
  static TwoQubitObservable yy();
  static TwoQubitObservable zz();
  static TwoQubitObservable z1();
  static TwoQubitObservable z2();

  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }

 private:
  explicit TwoQubitObservable(const Matrix& m) : m_(m) {}
  Matrix m_;
};

CompositeState evolve_free(const CompositeState& state, double duration, double omega);

/// exp(-i kappa X sigma^z_k): bit 0 of pointer k picks up exp(-i kappa x),
/// bit 1 picks up exp(+i kappa x).
CompositeState apply_kick(const CompositeState& state, int pointer, double kappa);

/// Called after every stage of run_schedule with a short stage label.
using StageObserver = std::function<void(std::string_view stage, const CompositeState&)>;

/// Free to t1, kick pointer 1, free to t2, kick pointer 2, free to T.
/// Throws PacketEscapesDomain when the density in the outer strip of the
/// grid exceeds kBoundaryDensityGuard at any stage.
CompositeState run_schedule(const ParticleState& particle, const QubitPairState& qubits,
                            const CouplingSchedule& schedule, const StageObserver& observer = {});

double expect_two_qubit(const CompositeState& state, const TwoQubitObservable& obs);

enum class ParticleObservable { X, P };
double expect_particle(const CompositeState& state, ParticleObservable which);

/// Reduced pointer density matrix rho_ab = <branch_b|branch_a>.
TwoQubitObservable::Matrix reduced_qubit_state(const CompositeState& state);

/// Total density sum |psi|^2 dx in the outer strips (each side holds half of
/// kBoundaryStripFraction of the grid).
double boundary_density(const CompositeState& state);

}  // namespace tofq

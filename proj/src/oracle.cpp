#include "tofq/oracle.hpp"

#include <cmath>
#include <string>

namespace tofq {
namespace {

using Matrix = TwoQubitObservable::Matrix;
using Pauli = std::array<std::array<cplx, 2>, 2>;

constexpr cplx I{0.0, 1.0};
const Pauli kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};
const Pauli kSigmaX{{{0.0, 1.0}, {1.0, 0.0}}};
const Pauli kSigmaY{{{0.0, -I}, {I, 0.0}}};
const Pauli kSigmaZ{{{1.0, 0.0}, {0.0, -1.0}}};

Matrix kron(const Pauli& a, const Pauli& b) {
  Matrix m{};
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) m[2 * i1 + i2][2 * j1 + j2] = a[i1][j1] * b[i2][j2];
  return m;
}

// sigma^z eigenvalue of a basis bit: |0> -> +1, |1> -> -1.
constexpr double z_eigenvalue(int bit) { return bit == 0 ? 1.0 : -1.0; }

cplx inner(const GridSpec& grid, const CVector& a, const CVector& b) {
  cplx sum{};
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::conj(a[j]) * b[j];
  return sum * grid.dx();
}

void check_boundary(const CompositeState& state, std::string_view stage) {
  const double density = boundary_density(state);
  if (density > kBoundaryDensityGuard)
    fail(ErrorKind::PacketEscapesDomain, "boundary density " + std::to_string(density) + " after stage '" +
                                             std::string(stage) + "' exceeds guard");
}

}  // namespace

TwoQubitObservable TwoQubitObservable::from_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (std::abs(m[i][j] - std::conj(m[j][i])) > 1e-14)
        fail(ErrorKind::InvalidArgument, "two-qubit observable is not Hermitian");
  return TwoQubitObservable(m);
}

TwoQubitObservable TwoQubitObservable::xx() { return TwoQubitObservable(kron(kSigmaX, kSigmaX)); }
TwoQubitObservable TwoQubitObservable::yy() { return TwoQubitObservable(kron(kSigmaY, kSigmaY)); }
TwoQubitObservable TwoQubitObservable::zz() { return TwoQubitObservable(kron(kSigmaZ, kSigmaZ)); }
TwoQubitObservable TwoQubitObservable::z1() { return TwoQubitObservable(kron(kSigmaZ, kIdentity)); }
TwoQubitObservable TwoQubitObservable::z2() { return TwoQubitObservable(kron(kIdentity, kSigmaZ)); }

CompositeState evolve_free(const CompositeState& state, double duration, double omega) {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    fail(ErrorKind::InvalidArgument, "free evolution needs a finite non-negative duration");
  if (duration == 0.0) return state;
  const GridSpec& grid = state.grid();
  CompositeState::Branches out;
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const std::size_t idx = QubitPairState::index(b1, b2);
      const double zsum = z_eigenvalue(b1) + z_eigenvalue(b2);
      const cplx qubit_phase = std::polar(1.0, -0.5 * omega * duration * zsum);
      out[idx] = spectral::apply_spectral_phase(state.branch(idx), grid.dx(), [&](double k) {
        return qubit_phase * std::polar(1.0, -0.5 * k * k * duration);
      });
    }
  }
  return CompositeState::from_branches(grid, std::move(out));
}

CompositeState apply_kick(const CompositeState& state, int pointer, double kappa) {
  if (pointer != 1 && pointer != 2)
    fail(ErrorKind::InvalidPointerIndex, "pointer index must be 1 or 2, got " + std::to_string(pointer));
  const GridSpec& grid = state.grid();
  CompositeState::Branches out = state.branches();
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const double s = z_eigenvalue(pointer == 1 ? b1 : b2);
      auto& branch = out[QubitPairState::index(b1, b2)];
      for (std::size_t j = 0; j < branch.size(); ++j) branch[j] *= std::polar(1.0, -kappa * s * grid.x(j));
    }
  }
  return CompositeState::from_branches(grid, std::move(out));
}

CompositeState run_schedule(const ParticleState& particle, const QubitPairState& qubits,
                            const CouplingSchedule& schedule, const StageObserver& observer) {
  schedule.validate();
  auto notify = [&](std::string_view stage, const CompositeState& s) {
    check_boundary(s, stage);
    if (observer) observer(stage, s);
  };

  CompositeState state = CompositeState::product(particle, qubits);
  notify("initial", state);
  state = evolve_free(state, schedule.t1, schedule.omega);
  notify("free-to-t1", state);
  state = apply_kick(state, 1, schedule.kappa);
  notify("kick-1", state);
  state = evolve_free(state, schedule.t2 - schedule.t1, schedule.omega);
  notify("free-to-t2", state);
  state = apply_kick(state, 2, schedule.kappa);
  notify("kick-2", state);
  state = evolve_free(state, schedule.T - schedule.t2, schedule.omega);
  notify("free-to-T", state);
  return state;
}

double expect_two_qubit(const CompositeState& state, const TwoQubitObservable& obs) {
  cplx sum{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if (obs(a, b) != cplx{}) sum += obs(a, b) * inner(state.grid(), state.branch(a), state.branch(b));
  if (std::abs(sum.imag()) > 1e-12)
    fail(ErrorKind::InvalidArgument, "two-qubit expectation has imaginary residue " + std::to_string(sum.imag()));
  return sum.real();
}

double expect_particle(const CompositeState& state, ParticleObservable which) {
  const GridSpec& grid = state.grid();
  double sum = 0.0;
  for (const auto& branch : state.branches()) {
    if (which == ParticleObservable::X) {
      double partial = 0.0;
      for (std::size_t j = 0; j < branch.size(); ++j) partial += grid.x(j) * std::norm(branch[j]);
      sum += partial * grid.dx();
    } else {
      const auto rep = momentum_representation(grid, branch);
      double partial = 0.0;
      for (std::size_t j = 0; j < rep.amplitudes.size(); ++j) partial += rep.p(j) * std::norm(rep.amplitudes[j]);
      sum += partial * rep.dp;
    }
  }
  return sum;
}

TwoQubitObservable::Matrix reduced_qubit_state(const CompositeState& state) {
  Matrix rho{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) rho[a][b] = inner(state.grid(), state.branch(b), state.branch(a));
  return rho;
}

double boundary_density(const CompositeState& state) {
  const std::size_t n = state.grid().n_points;
  const auto strip = static_cast<std::size_t>(std::ceil(0.5 * kBoundaryStripFraction * static_cast<double>(n)));
  double sum = 0.0;
  for (const auto& branch : state.branches())
    for (std::size_t j = 0; j < strip; ++j) sum += std::norm(branch[j]) + std::norm(branch[n - 1 - j]);
  return sum * state.grid().dx();
}

}  // namespace tofq

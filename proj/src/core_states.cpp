#include "tofq/core_states.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tofq {
namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

void GridSpec::validate() const {
  if (n_points < 2 || !std::has_single_bit(n_points))
    fail(ErrorKind::InvalidArgument, "grid n_points must be a power of two >= 2, got " +
                                         std::to_string(n_points));
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    fail(ErrorKind::InvalidArgument, "grid requires finite x_max > x_min");
}

std::vector<double> GridSpec::positions() const {
  std::vector<double> xs(n_points);
  for (std::size_t j = 0; j < n_points; ++j) xs[j] = x(j);
  return xs;
}

double grid_norm(const GridSpec& grid, std::span<const cplx> amplitudes) {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum * grid.dx();
}

// ---------------------------------------------------------------------------
// ParticleState

ParticleState ParticleState::from_amplitudes(GridSpec grid, CVector amplitudes) {
  grid.validate();
  if (amplitudes.size() != grid.n_points)
    fail(ErrorKind::InvalidArgument, "amplitude count does not match grid");
  const double norm = grid_norm(grid, amplitudes);
  if (std::abs(norm - 1.0) > kNormTolerance)
    fail(ErrorKind::InvalidArgument, "particle state not normalized: norm = " + describe(norm));
  return ParticleState(grid, std::move(amplitudes));
}

ParticleState ParticleState::normalized(GridSpec grid, CVector amplitudes) {
  grid.validate();
  if (amplitudes.size() != grid.n_points)
    fail(ErrorKind::InvalidArgument, "amplitude count does not match grid");
  const double norm = grid_norm(grid, amplitudes);
  if (!(norm > 0.0) || !std::isfinite(norm))
    fail(ErrorKind::ZeroNorm, "cannot normalize a state with zero total norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amplitudes) a *= scale;
  return ParticleState(grid, std::move(amplitudes));
}

double ParticleState::mean_position() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < amplitudes_.size(); ++j) sum += grid_.x(j) * std::norm(amplitudes_[j]);
  return sum * grid_.dx();
}

double ParticleState::mean_momentum() const {
  const auto rep = momentum_representation(*this);
  double sum = 0.0;
  for (std::size_t j = 0; j < rep.amplitudes.size(); ++j) sum += rep.p(j) * std::norm(rep.amplitudes[j]);
  return sum * rep.dp;
}

// ---------------------------------------------------------------------------
// QubitPairState

QubitPairState QubitPairState::from_amplitudes(cplx e00, cplx e01, cplx e10, cplx e11) {
  const double norm = std::norm(e00) + std::norm(e01) + std::norm(e10) + std::norm(e11);
  if (std::abs(norm - 1.0) > kQubitNormTolerance)
    fail(ErrorKind::InvalidArgument, "qubit pair state not normalized: norm = " + describe(norm));
  return QubitPairState({e00, e01, e10, e11});
}

QubitPairState QubitPairState::basis(int bit1, int bit2) {
  if ((bit1 != 0 && bit1 != 1) || (bit2 != 0 && bit2 != 1))
    fail(ErrorKind::InvalidArgument, "basis bits must be 0 or 1");
  std::array<cplx, 4> amps{};
  amps[index(bit1, bit2)] = 1.0;
  return QubitPairState(amps);
}

// ---------------------------------------------------------------------------
// CouplingSchedule

void CouplingSchedule::validate() const {
  for (double v : {kappa, t1, t2, T, omega})
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "schedule parameters must be finite");
  if (!(0.0 < t1 && t1 < t2 && t2 < T))
    fail(ErrorKind::ScheduleInfeasible, "schedule requires 0 < t1 < t2 < T (t1=" + describe(t1) +
                                            ", t2=" + describe(t2) + ", T=" + describe(T) + ")");
  if (kappa < 0.0) fail(ErrorKind::InvalidArgument, "kappa must be non-negative");
  if (omega < 0.0) fail(ErrorKind::InvalidArgument, "omega must be non-negative");
}

double CouplingSchedule::kick_time(int pointer) const {
  if (pointer == 1) return t1;
  if (pointer == 2) return t2;
  fail(ErrorKind::InvalidPointerIndex, "pointer index must be 1 or 2, got " + std::to_string(pointer));
}

// ---------------------------------------------------------------------------
// CompositeState

CompositeState CompositeState::product(const ParticleState& particle, const QubitPairState& qubits) {
  Branches branches;
  const auto psi = particle.amplitudes();
  for (std::size_t b = 0; b < 4; ++b) {
    branches[b].resize(psi.size());
    const cplx eps = qubits.amplitudes()[b];
    for (std::size_t j = 0; j < psi.size(); ++j) branches[b][j] = eps * psi[j];
  }
  return CompositeState(particle.grid(), std::move(branches));
}

CompositeState CompositeState::from_branches(GridSpec grid, Branches branches) {
  grid.validate();
  for (const auto& b : branches)
    if (b.size() != grid.n_points) fail(ErrorKind::InvalidArgument, "branch length does not match grid");
  CompositeState state(grid, std::move(branches));
  const double norm = state.total_norm();
  if (std::abs(norm - 1.0) > kNormTolerance)
    fail(ErrorKind::InvalidArgument, "composite state not normalized: norm = " + describe(norm));
  return state;
}

double CompositeState::total_norm() const {
  double sum = 0.0;
  for (double p : populations()) sum += p;
  return sum;
}

std::array<double, 4> CompositeState::populations() const {
  std::array<double, 4> pops{};
  for (std::size_t b = 0; b < 4; ++b) pops[b] = grid_norm(grid_, branches_[b]);
  return pops;
}

// ---------------------------------------------------------------------------
// Constructors

ParticleState make_gaussian(const GridSpec& grid, double x0, double p0, double sigma) {
  grid.validate();
  if (!(sigma > 0.0) || !std::isfinite(x0) || !std::isfinite(p0))
    fail(ErrorKind::InvalidArgument, "gaussian requires finite x0, p0 and sigma > 0");
  const double dx = grid.dx();
  if (sigma < 4.0 * dx)
    fail(ErrorKind::GridTooCoarse, "sigma = " + describe(sigma) + " is below 4 dx = " + describe(4.0 * dx));
  // Momentum spread is 1/(2 sigma); keep eight of them inside the Nyquist band.
  const double p_nyquist = std::numbers::pi / dx;
  if (std::abs(p0) + 8.0 / (2.0 * sigma) >= p_nyquist)
    fail(ErrorKind::GridTooCoarse, "packet momentum content exceeds the grid Nyquist momentum");

  const double peak_density = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  auto density_at = [&](double x) {
    return peak_density * std::exp(-(x - x0) * (x - x0) / (2.0 * sigma * sigma));
  };
  if (density_at(grid.x_min) >= kBoundaryTailGuard || density_at(grid.x_max) >= kBoundaryTailGuard)
    fail(ErrorKind::PacketEscapesDomain, "gaussian tails exceed the boundary guard");

  CVector psi(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    const double envelope = std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma));
    psi[j] = envelope * std::polar(1.0, p0 * x);
  }
  return ParticleState::normalized(grid, std::move(psi));
}

ParticleState make_superposition(const std::vector<std::pair<cplx, ParticleState>>& terms) {
  if (terms.empty()) fail(ErrorKind::ZeroNorm, "superposition of no states");
  const GridSpec& grid = terms.front().second.grid();
  CVector sum(grid.n_points, cplx{});
  for (const auto& [weight, state] : terms) {
    if (!(state.grid() == grid)) fail(ErrorKind::MismatchedGrid, "superposed states use different grids");
    const auto amps = state.amplitudes();
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += weight * amps[j];
  }
  // Relative cutoff keeps cancellation residue from being renormalized into noise.
  double scale = 0.0;
  for (const auto& [weight, state] : terms) scale += std::abs(weight);
  if (grid_norm(grid, sum) <= 1e-24 * scale * scale)
    fail(ErrorKind::ZeroNorm, "superposition has zero total norm");
  return ParticleState::normalized(grid, std::move(sum));
}

// ---------------------------------------------------------------------------
// Momentum representation

std::vector<double> MomentumRepresentation::momenta() const {
  std::vector<double> ps(amplitudes.size());
  for (std::size_t j = 0; j < ps.size(); ++j) ps[j] = p(j);
  return ps;
}

std::vector<double> MomentumRepresentation::density() const {
  std::vector<double> d(amplitudes.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::norm(amplitudes[j]);
  return d;
}

MomentumRepresentation momentum_representation(const ParticleState& state) {
  return momentum_representation(state.grid(), state.amplitudes());
}

MomentumRepresentation momentum_representation(const GridSpec& grid, std::span<const cplx> amplitudes) {
  const std::size_t n = grid.n_points;
  const double dx = grid.dx();
  MomentumRepresentation rep;
  rep.dp = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  rep.p_min = -static_cast<double>(n / 2) * rep.dp;

  // (-1)^j modulation moves the zero frequency to the middle of the array.
  CVector modulated(amplitudes.begin(), amplitudes.end());
  for (std::size_t j = 1; j < n; j += 2) modulated[j] = -modulated[j];
  rep.amplitudes = spectral::forward(modulated);

  const double prefactor = dx / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < n; ++k)
    rep.amplitudes[k] *= prefactor * std::polar(1.0, -rep.p(k) * grid.x_min);
  return rep;
}

CVector position_representation(const GridSpec& grid, const MomentumRepresentation& rep) {
  const std::size_t n = grid.n_points;
  if (rep.amplitudes.size() != n) fail(ErrorKind::MismatchedGrid, "momentum samples do not match grid");
  CVector spec(n);
  const double prefactor = std::sqrt(2.0 * std::numbers::pi) / grid.dx();
  for (std::size_t k = 0; k < n; ++k)
    spec[k] = rep.amplitudes[k] * prefactor * std::polar(1.0, rep.p(k) * grid.x_min);
  CVector psi = spectral::inverse(spec);
  for (std::size_t j = 1; j < n; j += 2) psi[j] = -psi[j];
  return psi;
}

// ---------------------------------------------------------------------------
// Interaction coefficients

double coefficient_a(const CouplingSchedule& schedule, int pointer, double t) {
  const double tk = schedule.kick_time(pointer);
  if (t < 0.0) fail(ErrorKind::InvalidArgument, "coefficient time must be non-negative");
  return t >= tk ? schedule.kappa : 0.0;
}

double coefficient_b(const CouplingSchedule& schedule, int pointer, double t) {
  const double tk = schedule.kick_time(pointer);
  if (t < 0.0) fail(ErrorKind::InvalidArgument, "coefficient time must be non-negative");
  return t >= tk ? schedule.kappa * (t - tk) : 0.0;
}

}  // namespace tofq

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quadrature_oracle.hpp"
#include "tofq/analytic.hpp"
#include "tofq/oracle.hpp"

namespace tofq {
namespace {

const double kSigma = 1.0 / std::numbers::sqrt2;

ParticleState gaussian(double x0, double p0, double sigma = kSigma) {
  return make_gaussian(reference_grid(), x0, p0, sigma);
}

double max_branch_diff(const CompositeState& a, const CompositeState& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t j = 0; j < a.branch(k).size(); ++j) worst = std::max(worst, std::abs(a.branch(k)[j] - b.branch(k)[j]));
  return worst;
}

TEST(Observables, HermitianCheck) {
  TwoQubitObservable::Matrix m{};
  m[0][1] = cplx(0, 1);
  m[1][0] = cplx(0, 1);
  EXPECT_THROW(TwoQubitObservable::from_matrix(m), Error);
  m[1][0] = cplx(0, -1);
  EXPECT_NO_THROW(TwoQubitObservable::from_matrix(m));
  EXPECT_EQ(TwoQubitObservable::xx()(0, 3), cplx(1.0));
  EXPECT_EQ(TwoQubitObservable::yy()(0, 3), cplx(-1.0));
  EXPECT_EQ(TwoQubitObservable::z1()(2, 2), cplx(-1.0));
  EXPECT_EQ(TwoQubitObservable::z2()(1, 1), cplx(-1.0));
}

TEST(EvolveFree, ZeroDurationIsIdentity) {
  const auto s = CompositeState::product(gaussian(0, 1), make_separable_optimal(0.3, 0.2));
  EXPECT_LT(max_branch_diff(evolve_free(s, 0.0, 1.7), s), 1e-15);
}

TEST(EvolveFree, QubitPhasePeriodicity) {
  // With no kinetic motion to compare against, look at the qubit phases only:
  // evolve with omega = 2 pi and compare against omega = 0 for the same time.
  const auto s = CompositeState::product(gaussian(0, 1), make_separable_optimal(0, 0));
  const auto a = evolve_free(s, 1.0, 2.0 * std::numbers::pi);
  const auto b = evolve_free(s, 1.0, 0.0);
  // s1 + s2 is even for every branch, so all signs are +1.
  EXPECT_LT(max_branch_diff(a, b), 1e-13);
}

TEST(EvolveFree, MatchesSpreadingGaussian) {
  const auto grid = reference_grid();
  const struct { double x0, p0, sigma; } packets[] = {{0, 0, kSigma}, {0, 2, kSigma}, {-3, 1, 1.0}};
  for (const auto& g : packets) {
    const auto s = CompositeState::product(gaussian(g.x0, g.p0, g.sigma), QubitPairState::basis(0, 0));
    for (double t : {0.5, 2.0, 5.0}) {
      const auto out = evolve_free(s, t, 0.0);
      double worst = 0.0;
      for (std::size_t j = 0; j < grid.n_points; ++j)
        worst = std::max(worst, std::abs(out.branch(0)[j] - test::free_gaussian_psi(grid.x(j), g.x0, g.p0, g.sigma, t)));
      EXPECT_LT(worst, 1e-10) << "p0=" << g.p0 << " t=" << t;
    }
  }
}

TEST(EvolveFree, NarrowMomentumPacketPicksUpGlobalPhase) {
  // sigma = 4 gives a momentum width of 1/8, so the packet is close to a
  // plane wave with phase e^{-i p0^2 t/2}; compare against the closed form.
  const auto grid = reference_grid();
  const double p0 = 1.0, t = 0.5, sigma = 4.0;
  const auto s = CompositeState::product(gaussian(0, p0, sigma), QubitPairState::basis(0, 0));
  const auto out = evolve_free(s, t, 0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j)
    worst = std::max(worst, std::abs(out.branch(0)[j] - test::free_gaussian_psi(grid.x(j), 0, p0, sigma, t)));
  EXPECT_LT(worst, 1e-8);
  // The envelope only translates; its height barely changes.
  double peak_before = 0.0, peak_after = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    peak_before = std::max(peak_before, std::abs(s.branch(0)[j]));
    peak_after = std::max(peak_after, std::abs(out.branch(0)[j]));
  }
  EXPECT_NEAR(peak_after / peak_before, 1.0, 1e-3);
}

TEST(ApplyKick, ZeroKickAndInverse) {
  const auto s = CompositeState::product(gaussian(0.5, 1), make_bell(0.4));
  EXPECT_LT(max_branch_diff(apply_kick(s, 1, 0.0), s), 1e-15);
  for (int pointer : {1, 2}) EXPECT_LT(max_branch_diff(apply_kick(apply_kick(s, pointer, 0.8), pointer, -0.8), s), 1e-13);
  EXPECT_THROW(apply_kick(s, 3, 1.0), Error);
}

TEST(ApplyKick, PhaseSignConvention) {
  const auto grid = reference_grid();
  const auto s = CompositeState::product(gaussian(0, 0), make_separable_optimal(0, 0));
  const auto k = apply_kick(s, 1, 0.7);
  for (std::size_t j : {1000u, 2048u, 3000u}) {
    const double x = grid.x(j);
    EXPECT_LT(std::abs(k.branch(0, 1)[j] - s.branch(0, 1)[j] * std::polar(1.0, -0.7 * x)), 1e-15);
    EXPECT_LT(std::abs(k.branch(1, 0)[j] - s.branch(1, 0)[j] * std::polar(1.0, 0.7 * x)), 1e-15);
  }
  const auto z_before = expect_two_qubit(s, TwoQubitObservable::z1());
  EXPECT_NEAR(expect_two_qubit(k, TwoQubitObservable::z1()), z_before, 1e-14);
}

TEST(ExpectTwoQubit, FreshStates) {
  EXPECT_NEAR(expect_two_qubit(CompositeState::product(gaussian(0, 0), QubitPairState::basis(0, 0)), TwoQubitObservable::zz()),
              1.0, 1e-12);
  EXPECT_NEAR(expect_two_qubit(CompositeState::product(gaussian(0, 0), make_bell(0)), TwoQubitObservable::xx()), 1.0, 1e-12);
}

TEST(RunSchedule, MatchesAnalyticCorrelations) {
  const CouplingSchedule s{1, 1, 2, 3, 1};
  const auto psi = gaussian(0, 2);
  for (const auto& q : {make_bell(0), make_separable_optimal(0, 0), make_separable_optimal(0.4, 1.1),
                        QubitPairState::from_amplitudes(0.6, 0, 0, cplx(0, 0.8))}) {
    const auto out = run_schedule(psi, q, s);
    const auto c = correlations(psi, q, s);
    EXPECT_NEAR(expect_two_qubit(out, TwoQubitObservable::xx()), c.xx, 1e-6);
    EXPECT_NEAR(expect_two_qubit(out, TwoQubitObservable::yy()), c.yy, 1e-6);
  }
}

TEST(RunSchedule, HeisenbergMeans) {
  const auto psi = gaussian(0, 2);
  const CouplingSchedule s{1, 1, 2, 3, 1};
  const double x0 = psi.mean_position(), p0 = psi.mean_momentum();
  for (int b1 : {0, 1})
    for (int b2 : {0, 1}) {
      const double z1 = b1 ? -1 : 1, z2 = b2 ? -1 : 1;
      const auto out = run_schedule(psi, QubitPairState::basis(b1, b2), s);
      EXPECT_NEAR(expect_particle(out, ParticleObservable::P), p0 - s.kappa * (z1 + z2), 1e-8);
      EXPECT_NEAR(expect_particle(out, ParticleObservable::X),
                  x0 + p0 * s.T - s.kappa * (s.T - s.t1) * z1 - s.kappa * (s.T - s.t2) * z2, 1e-8);
    }
}

TEST(RunSchedule, PauliZConstantAtEveryStage) {
  const auto pointer = QubitPairState::from_amplitudes(0.6, cplx(0, 0.48), 0.0, 0.64);
  const double z1 = 0.36 + 0.2304 - 0.4096, z2 = 0.36 - 0.2304 - 0.4096;
  int stages = 0;
  (void)run_schedule(gaussian(0, 2), pointer, CouplingSchedule{1, 1, 2, 3, 1}, [&](std::string_view, const CompositeState& st) {
    ++stages;
    EXPECT_NEAR(expect_two_qubit(st, TwoQubitObservable::z1()), z1, 1e-12);
    EXPECT_NEAR(expect_two_qubit(st, TwoQubitObservable::z2()), z2, 1e-12);
    EXPECT_NEAR(st.total_norm(), 1.0, 1e-12);
  });
  EXPECT_EQ(stages, 6);
}

TEST(RunSchedule, DecoupledLimitRotatesQubitsOnly) {
  const double omega = 0.9, T = 3.0;
  const auto q = make_separable_optimal(0.3, -0.8);
  const auto out = run_schedule(gaussian(0, 1), q, CouplingSchedule{0.0, 1, 2, T, omega});
  const auto rho = reduced_qubit_state(out);
  // Branch phase e^{-i omega T (s1+s2)/2}.
  std::array<cplx, 4> rotated;
  for (int b1 : {0, 1})
    for (int b2 : {0, 1}) {
      const double s1 = b1 ? -1 : 1, s2 = b2 ? -1 : 1;
      rotated[QubitPairState::index(b1, b2)] = q.amplitude(b1, b2) * std::polar(1.0, -omega * T * (s1 + s2) / 2);
    }
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) EXPECT_LT(std::abs(rho[a][b] - rotated[a] * std::conj(rotated[b])), 1e-12);
}

TEST(RunSchedule, BoundaryEscapeIsReported) {
  try {
    (void)run_schedule(gaussian(40, 6), make_bell(0), CouplingSchedule{1, 1, 2, 3, 0});
    FAIL() << "expected packet-escapes-domain";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PacketEscapesDomain);
  }
}

}  // namespace
}  // namespace tofq

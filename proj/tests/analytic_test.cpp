#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quadrature_oracle.hpp"
#include "tofq/analytic.hpp"

namespace tofq {
namespace {

const double kSigma = 1.0 / std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

ParticleState gaussian(double x0, double p0, double sigma = kSigma) {
  return make_gaussian(reference_grid(), x0, p0, sigma);
}

TEST(CharFn, UnityAtZero) {
  EXPECT_EQ(char_fn(gaussian(0, 0), 0.0), cplx(1.0, 0.0));
  EXPECT_NEAR(std::abs(char_fn(gaussian(1.5, -1.0, 1.3), 0.0) - 1.0), 0.0, 1e-14);
}

TEST(CharFn, GaussianAgainstQuadrature) {
  const struct { double x0, p0, sigma; } packets[] = {{0, 0, kSigma}, {0, 2, kSigma}, {-2, 1, 1.2}, {3, -1.5, 0.8}};
  for (const auto& g : packets) {
    const auto psi = gaussian(g.x0, g.p0, g.sigma);
    for (double lambda : {-3.0, -0.7, 0.4, 1.0, 2.5, 6.0}) {
      const cplx expected = test::gaussian_weyl_quadrature(g.x0, g.p0, g.sigma, 0.0, lambda);
      EXPECT_LT(std::abs(char_fn(psi, lambda) - expected), 1e-10) << g.x0 << "," << g.p0 << " lambda=" << lambda;
    }
  }
}

TEST(CharFn, StandardGaussianClosedForm) {
  const auto psi = gaussian(0, 0);
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const cplx quad = test::gaussian_weyl_quadrature(0, 0, kSigma, 0.0, lambda);
    EXPECT_NEAR(quad.real(), std::exp(-lambda * lambda / 4), 1e-12);
    EXPECT_NEAR(char_fn(psi, lambda).real(), std::exp(-lambda * lambda / 4), 1e-12);
    EXPECT_NEAR(char_fn(psi, lambda).imag(), 0.0, 1e-12);
  }
}

TEST(CharFn, MomentumKickPhase) {
  const cplx expected = std::polar(std::exp(-0.25), 2.0);
  EXPECT_LT(std::abs(test::gaussian_weyl_quadrature(0, 2, kSigma, 0.0, 1.0) - expected), 1e-12);
  EXPECT_LT(std::abs(char_fn(gaussian(0, 2), 1.0) - expected), 1e-12);
}

TEST(CharFn, TwoRoutesAgree) {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto bimodal = make_superposition({{r, gaussian(0, 2)}, {r, gaussian(0, -2)}});
  for (const auto& psi : {gaussian(0, 2), gaussian(1, -1, 1.1), bimodal}) {
    for (double lambda : {-5.0, -1.0, 0.3, 2.0, 7.5}) {
      EXPECT_LT(std::abs(char_fn(psi, lambda) - char_fn_momentum(psi, lambda)), 1e-8);
      EXPECT_LT(std::abs(char_fn(psi, -lambda) - std::conj(char_fn(psi, lambda))), 1e-12);
    }
  }
}

TEST(CharFn, ShiftBeyondHalfDomainIsRejected) {
  try {
    (void)char_fn(gaussian(0, 0), 61.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LambdaOutOfRange);
  }
}

TEST(WeylExpectation, ReducesToCharFnAndIdentity) {
  const auto psi = gaussian(0.5, 1.0);
  EXPECT_LT(std::abs(weyl_expectation(psi, 0.0, 1.7) - char_fn(psi, 1.7)), 1e-15);
  EXPECT_LT(std::abs(weyl_expectation(psi, 0.0, 0.0) - 1.0), 1e-14);
}

TEST(WeylExpectation, GaussianUnitDisplacement) {
  // For the real, centred Gaussian the displaced overlap is real: the e^{i/2}
  // prefactor cancels against the phase picked up by the overlap integral.
  const cplx quad = test::gaussian_weyl_quadrature(0, 0, kSigma, 1.0, 1.0);
  EXPECT_LT(std::abs(quad - std::exp(-0.5)), 1e-12);
  EXPECT_LT(std::abs(weyl_expectation(gaussian(0, 0), 1.0, 1.0) - quad), 1e-12);
}

TEST(WeylExpectation, GeneralGaussiansAgainstQuadrature) {
  const struct { double x0, p0, sigma, alpha, beta; } cases[] = {
      {0, 2, kSigma, 4.0, 6.0}, {1, -1, 1.0, -2.0, 3.0}, {-0.5, 0.5, 0.9, 0.7, -2.2}, {0, 0, kSigma, 2.0, 0.0}};
  for (const auto& c : cases) {
    const cplx quad = test::gaussian_weyl_quadrature(c.x0, c.p0, c.sigma, c.alpha, c.beta);
    EXPECT_LT(std::abs(weyl_expectation(gaussian(c.x0, c.p0, c.sigma), c.alpha, c.beta) - quad), 1e-10)
        << c.alpha << "," << c.beta;
  }
}

TEST(Correlations, ComputationalBasisGivesZero) {
  const CouplingSchedule s{1, 1, 2, 3, 0.7};
  for (int b1 : {0, 1})
    for (int b2 : {0, 1}) {
      const auto q = QubitPairState::basis(b1, b2);
      EXPECT_EQ(corr_xx(gaussian(0, 2), q, s), 0.0);
      EXPECT_EQ(corr_yy(gaussian(0, 2), q, s), 0.0);
    }
}

TEST(Correlations, BellStateGaussian) {
  const auto psi = gaussian(0, 0);
  for (double omega : {0.0, 1.0, 3.3}) {
    const CouplingSchedule s{1, 1, 2, 3, omega};
    const auto c = correlations(psi, make_bell(0), s);
    EXPECT_NEAR(c.xx, std::exp(-1.0), 1e-12);
    EXPECT_EQ(c.xx, c.yy);
  }
}

TEST(Correlations, SeparableSumIsRealPart) {
  const auto psi = gaussian(0, 2);
  const CouplingSchedule s{0.8, 1, 2.5, 4, 1.0};
  const auto c = correlations(psi, make_separable_optimal(0, 0), s);
  EXPECT_NEAR(c.xx + c.yy, char_fn(psi, s.lambda()).real(), 1e-14);
}

TEST(Correlations, MuTermMatchesPositionMomentumOverlap) {
  // |00> + |11> isolates the term depending on both X and P.
  const double r = 1.0 / std::numbers::sqrt2;
  const auto q = QubitPairState::from_amplitudes(r, 0, 0, r);
  const CouplingSchedule s{0.5, 1, 1.5, 4, 1.0};
  const double x0 = 0, p0 = 2;
  const cplx w = test::gaussian_weyl_quadrature(x0, p0, kSigma, 4 * s.kappa, 2 * s.kappa * (s.t1 + s.t2));
  const cplx mu = 2.0 * std::conj(q.e00()) * q.e11() * std::polar(1.0, 2 * s.omega * s.T) * w;
  const auto c = correlations(gaussian(x0, p0), q, s);
  EXPECT_NEAR(c.xx, mu.real(), 1e-10);
  EXPECT_NEAR(c.yy, -mu.real(), 1e-10);
}

TEST(PointerStates, SeparableOptimal) {
  const auto a = make_separable_optimal(0, 0);
  for (auto e : a.amplitudes()) EXPECT_LT(std::abs(e - 0.5), 1e-15);
  const auto b = make_separable_optimal(0, kPi);
  EXPECT_LT(std::abs(b.e00() - 0.5), 1e-15);
  EXPECT_LT(std::abs(b.e10() - 0.5), 1e-15);
  EXPECT_LT(std::abs(b.e01() + 0.5), 1e-15);
  EXPECT_LT(std::abs(b.e11() + 0.5), 1e-15);
  for (double phi1 : {0.3, 1.9})
    for (double phi2 : {-0.4, 2.8}) {
      const auto q = make_separable_optimal(phi1, phi2);
      double n = 0;
      for (auto e : q.amplitudes()) n += std::norm(e);
      EXPECT_NEAR(n, 1.0, 1e-14);
    }
}

TEST(PointerStates, Bell) {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto plus = make_bell(0);
  EXPECT_EQ(plus.e00(), cplx(0.0));
  EXPECT_LT(std::abs(plus.e01() - r), 1e-15);
  EXPECT_LT(std::abs(plus.e10() - r), 1e-15);
  const auto minus = make_bell(kPi);
  EXPECT_LT(std::abs(minus.e10() + r), 1e-15);
  for (double phi : {0.0, 0.4, 2.0}) {
    const auto q = make_bell(phi);
    EXPECT_NEAR(std::abs(q.e01() * q.e10()), 0.5, 1e-15);
  }
}

TEST(SchemeValue, SeparableAndEntangledReadReOrIm) {
  const auto psi = gaussian(0, 2);
  const CouplingSchedule s{1, 1, 2, 4, 1.0};
  const cplx c = char_fn(psi, s.lambda());
  EXPECT_NEAR(scheme_value(psi, s, SeparableSetting{0, 0}), c.real(), 1e-14);
  EXPECT_NEAR(scheme_value(psi, s, SeparableSetting{kPi / 2, 0}), c.imag(), 1e-14);
  EXPECT_NEAR(scheme_value(psi, s, EntangledSetting{0, Correlator::XX}), c.real(), 1e-14);
  EXPECT_NEAR(scheme_value(psi, s, EntangledSetting{kPi / 2, Correlator::XX}), c.imag(), 1e-14);
  EXPECT_NEAR(scheme_value(psi, s, EntangledSetting{kPi / 2, Correlator::YY}), c.imag(), 1e-14);
  // General phase difference.
  const double d = 0.9;
  EXPECT_NEAR(scheme_value(psi, s, SeparableSetting{0.2, 0.2 + d}), (c * std::polar(1.0, d)).real(), 1e-14);
  EXPECT_NEAR(scheme_value(psi, s, EntangledSetting{d, Correlator::YY}), (c * std::polar(1.0, -d)).real(), 1e-14);
}

TEST(MeasurementScheme, SettingCounts) {
  EXPECT_EQ(measurement_settings(MeasurementScheme::separable()).size(), 4u);
  EXPECT_EQ(measurement_settings(MeasurementScheme::entangled()).size(), 2u);
  EXPECT_EQ(MeasurementScheme::separable().settings_per_lambda(), 4u);
  EXPECT_EQ(MeasurementScheme::entangled(Correlator::YY).settings_per_lambda(), 2u);
}

}  // namespace
}  // namespace tofq

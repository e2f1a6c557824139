#include <gtest/gtest.h>

#include "tofq/config.hpp"

namespace tofq {
namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    (void)ScenarioConfig::from_json(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return ErrorKind::InvalidArgument;
}

TEST(ScenarioConfig, DefaultsValidate) { EXPECT_NO_THROW(ScenarioConfig{}.validate()); }

TEST(ScenarioConfig, EmptyDocumentGivesDefaults) { EXPECT_EQ(ScenarioConfig::from_json("{}"), ScenarioConfig{}); }

TEST(ScenarioConfig, RoundTripIsLossless) {
  ScenarioConfig c;
  c.particle.kind = ParticleSpec::Kind::Superposition;
  c.particle.components = {{cplx(0.6, 0.1), 0.25, 2.0, 0.7}, {cplx(-0.3, 0.7), -1.0 / 3.0, -2.0, 0.9}};
  c.grid = GridSpec{8192, -80, 80};
  c.schedule = {1.5, 0.25, 4.0, 0.1};
  c.lambda_max = 6.0;
  c.delta_lambda = 0.1;
  c.p_grid = PGrid{-8, 8, 801};
  c.scheme = MeasurementScheme::entangled(Correlator::YY);
  c.engine = Engine::Oracle;
  c.pointer.kind = PointerSpec::Kind::Separable;
  c.pointer.phi1 = 0.1;
  c.pointer.phi2 = 1.0 / 7.0;
  c.shots = ShotConfig{};
  c.shots->seed = 18446744073709551615ull;
  c.shots->budget_seeds = {3, 9};
  c.clip_negative = true;
  c.output_dir = "results/run 1";
  const auto back = ScenarioConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.particle, c.particle);
  EXPECT_EQ(back.shots, c.shots);
  EXPECT_EQ(back.pointer, c.pointer);
  EXPECT_EQ(back.grid, c.grid);
  EXPECT_EQ(back.hash(), c.hash());
  EXPECT_NE(ScenarioConfig{}.hash(), c.hash());
}

TEST(ScenarioConfig, RejectsUnknownKeys) {
  EXPECT_EQ(kind_of(R"({"lamda_grid": {}})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"schedule": {"kapa": 1}})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"particle": {"components": [{"x0": 0, "p": 2}]}})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"shots": {"seeds": 1}})"), ErrorKind::Config);
}

TEST(ScenarioConfig, RejectsBadValues) {
  EXPECT_EQ(kind_of("not json"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"engine": "exact"})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"shots": {"seed": -1}})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"grid": {"n_points": 4096.5}})"), ErrorKind::Config);
  EXPECT_EQ(kind_of(R"({"schedule": {"kappa": "two"}})"), ErrorKind::Config);
}

TEST(ScenarioConfig, ValidationReachesEveryModule) {
  ScenarioConfig c;
  c.lambda_max = 12.0;  // second kick would land after T
  EXPECT_THROW(c.validate(), Error);
  c = ScenarioConfig{};
  c.grid.n_points = 3000;
  EXPECT_THROW(c.validate(), Error);
  c = ScenarioConfig{};
  c.particle.components.front().x0 = 58.0;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace tofq

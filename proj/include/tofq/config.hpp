#pragma once

// Scenario configuration for the command-line runner. The on-disk format is
// a JSON document; every section is optional and falls back to the defaults
// below, but unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tofq/reconstruct.hpp"

namespace tofq {

struct GaussianComponent {
  cplx weight{1.0, 0.0};
  double x0 = 0.0;
  double p0 = 2.0;
  double sigma = 0.70710678118654752;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

struct ParticleSpec {
  enum class Kind { Gaussian, Superposition };
  Kind kind = Kind::Gaussian;
  std::vector<GaussianComponent> components{GaussianComponent{}};

  ParticleState build(const GridSpec& grid) const;
  friend bool operator==(const ParticleSpec&, const ParticleSpec&) = default;
};

struct PointerSpec {
  enum class Kind { Basis, Separable, Bell };
  Kind kind = Kind::Bell;
  int bit1 = 0, bit2 = 0;        // basis
  double phi1 = 0.0, phi2 = 0.0;  // separable
  double phi = 0.0;              // bell

  QubitPairState build() const;
  friend bool operator==(const PointerSpec&, const PointerSpec&) = default;
};

struct ShotConfig {
  std::uint64_t shots_per_setting = 100000;
  std::uint64_t seed = 1;
  std::uint64_t budget_per_lambda = 400000;
  std::vector<std::uint64_t> budget_seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};

  friend bool operator==(const ShotConfig&, const ShotConfig&) = default;
};

struct ScenarioConfig {
  ParticleSpec particle;
  GridSpec grid = reference_grid();
  ScheduleTemplate schedule;
  double lambda_max = 8.0;
  double delta_lambda = 0.05;
  PGrid p_grid;
  MeasurementScheme scheme = MeasurementScheme::entangled();
  Engine engine = Engine::Analytic;
  PointerSpec pointer;
  std::optional<ShotConfig> shots;
  bool clip_negative = false;
  std::string output_dir = "out";

  /// Checks every parameter against the module invariants, including
  /// building the particle and every lambda schedule. Throws Error.
  void validate() const;

  std::string to_json() const;
  static ScenarioConfig from_json(const std::string& text);
  static ScenarioConfig load(const std::filesystem::path& path);

  /// FNV-1a of the canonical serialized form, ignoring the output directory.
  std::uint64_t hash() const;

  bool operator==(const ScenarioConfig& other) const { return to_json() == other.to_json(); }
};

}  // namespace tofq

// tofq: scenario runner for the qubit-pointer time-of-flight momentum
// measurement.
//
//   tofq correlate    --config cfg.json --out DIR   correlations vs lambda
//   tofq reconstruct  --config cfg.json --out DIR   momentum density
//   tofq oracle-check [--config cfg.json]           invariant table
//   tofq budget       --config cfg.json --out DIR   separable vs entangled
//
// Exit codes: 0 ok, 2 config error, 3 numerical guard tripped, 4 invariant
// failure.

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tofq/analytic.hpp"
#include "tofq/checks.hpp"
#include "tofq/config.hpp"
#include "tofq/oracle.hpp"
#include "tofq/parallel.hpp"
#include "tofq/reconstruct.hpp"
#include "tofq/shots.hpp"

namespace fs = std::filesystem;
using namespace tofq;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalGuard = 3, kInvariantFailure = 4 };

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string engine;
  unsigned threads = 0;
  bool both_engines = false;
};

[[noreturn]] void exit_with(int code, std::string_view kind, const std::string& message) {
  nlohmann::json line = {{"error", kind}, {"exit_code", code}, {"message", message}};
  std::cerr << line.dump() << std::endl;
  std::exit(code);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TOFQ_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    exit_with(kConfigError, "config", std::string("TOFQ_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Written next to the target and renamed into place, so a failed run never
// leaves a partial file behind.
void write_atomically(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) fail(ErrorKind::Io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

ScenarioConfig load_config(const Options& opts) {
  ScenarioConfig cfg = opts.config_path.empty() ? ScenarioConfig{} : ScenarioConfig::load(opts.config_path);
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.engine == "analytic") cfg.engine = Engine::Analytic;
  else if (opts.engine == "oracle") cfg.engine = Engine::Oracle;
  if (opts.seed && cfg.shots) cfg.shots->seed = *opts.seed;
  cfg.validate();
  return cfg;
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

// ---------------------------------------------------------------------------

int cmd_correlate(const ScenarioConfig& cfg, const Options& opts) {
  const auto particle = cfg.particle.build(cfg.grid);
  const auto qubits = cfg.pointer.build();
  const auto lambdas = make_lambda_grid(cfg.lambda_max, cfg.delta_lambda);

  // With kappa = 0 lambda cannot be tuned; sweep t2 evenly through (t1, T).
  std::vector<CouplingSchedule> schedules;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (cfg.schedule.kappa > 0.0) {
      schedules.push_back(cfg.schedule.schedule_for(lambdas[i]));
    } else {
      const double frac = static_cast<double>(i + 1) / static_cast<double>(lambdas.size() + 1);
      schedules.push_back({0.0, cfg.schedule.t1, cfg.schedule.t1 + frac * (cfg.schedule.T - cfg.schedule.t1),
                           cfg.schedule.T, cfg.schedule.omega});
    }
  }

  std::vector<Engine> engines{cfg.engine};
  if (opts.both_engines) engines = {Engine::Analytic, Engine::Oracle};
  std::ostringstream csv;
  csv << "lambda,t2,corr_xx,corr_yy,engine\n";
  for (Engine engine : engines) {
    std::vector<CorrelationPair> values(schedules.size());
    parallel_for(schedules.size(), resolve_threads(opts.threads), [&](std::size_t i) {
      if (engine == Engine::Analytic) {
        values[i] = correlations(particle, qubits, schedules[i]);
      } else {
        const auto final_state = run_schedule(particle, qubits, schedules[i]);
        values[i] = {expect_two_qubit(final_state, TwoQubitObservable::xx()),
                     expect_two_qubit(final_state, TwoQubitObservable::yy())};
      }
    });
    for (std::size_t i = 0; i < schedules.size(); ++i)
      csv << fmt::format("{},{},{},{},{}\n", g17(schedules[i].lambda()), g17(schedules[i].t2), g17(values[i].xx),
                         g17(values[i].yy), to_string(engine));
  }
  write_atomically(fs::path(cfg.output_dir) / "correlate.csv", csv.str());
  return kOk;
}

int cmd_reconstruct(const ScenarioConfig& cfg, const Options& opts) {
  const unsigned threads = resolve_threads(opts.threads);
  const auto particle = cfg.particle.build(cfg.grid);
  const auto lambdas = make_lambda_grid(cfg.lambda_max, cfg.delta_lambda);
  CharFnSamples samples;
  if (cfg.shots) {
    const ShotPlan plan{cfg.shots->shots_per_setting, cfg.scheme, cfg.shots->seed};
    samples = noisy_char_fn(particle, cfg.schedule, lambdas, plan, cfg.engine, threads);
  } else {
    samples = sample_char_fn(particle, cfg.schedule, cfg.scheme, lambdas, cfg.engine, threads);
  }

  const auto p_points = cfg.p_grid.points();
  InversionOptions inversion;
  inversion.clip_negative = cfg.clip_negative;
  auto estimate = invert_to_momentum_distribution(extend_hermitian(samples), p_points, inversion);
  const auto reference = exact_momentum_density(particle, p_points);
  estimate.metrics = compare_distributions(estimate, reference);
  const auto& m = *estimate.metrics;

  std::ostringstream csv;
  csv << "p,density_est,density_ref\n";
  for (std::size_t j = 0; j < p_points.size(); ++j)
    csv << fmt::format("{},{},{}\n", g17(p_points[j]), g17(estimate.density[j]), g17(reference.density[j]));
  std::string offsets;
  for (double off : m.peak_offsets) offsets += (offsets.empty() ? "" : ";") + g17(off);
  csv << fmt::format("# metrics,L1={},Linf={},total_variation={},peak_offsets={},truncation_bound={}\n", g17(m.l1),
                     g17(m.linf), g17(m.total_variation), offsets, g17(estimate.truncation_bound));
  const auto violations = samples.bound_violations();
  if (!violations.empty())
    estimate.warnings.push_back(fmt::format("{} shot samples exceed |C| <= 1 + 3 stderr", violations.size()));
  for (const auto& w : estimate.warnings) {
    csv << "# warning," << w << "\n";
    std::cerr << "warning: " << w << "\n";
  }

  std::ostringstream samples_csv;
  write_char_fn_csv(samples_csv, samples);
  write_atomically(fs::path(cfg.output_dir) / "char_fn.csv", samples_csv.str());
  write_atomically(fs::path(cfg.output_dir) / "reconstruct.csv", csv.str());
  std::cout << fmt::format("L1={} Linf={} total_variation={}\n", g17(m.l1), g17(m.linf), g17(m.total_variation));
  return kOk;
}

int cmd_oracle_check(const ScenarioConfig& cfg, const Options& opts) {
  const auto results = checks::run_all(cfg.grid, resolve_threads(opts.threads));
  std::ostringstream csv;
  csv << "criterion,name,max_deviation,tolerance,status\n";
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    csv << fmt::format("{},\"{}\",{},{},{}\n", r.criterion, r.name, g17(r.max_deviation), g17(r.tolerance),
                       r.pass ? "PASS" : "FAIL");
    std::cout << fmt::format("[{}] {:<52} dev={:<11.3e} tol={:<9.1e} {}{}\n", r.criterion, r.name, r.max_deviation,
                             r.tolerance, r.pass ? "PASS" : "FAIL", r.detail.empty() ? "" : "  (" + r.detail + ")");
  }
  if (!opts.out_dir.empty() || !opts.config_path.empty())
    write_atomically(fs::path(cfg.output_dir) / "oracle_check.csv", csv.str());
  return all_pass ? kOk : kInvariantFailure;
}

int cmd_budget(const ScenarioConfig& cfg, const Options& opts) {
  const ShotConfig shots = cfg.shots.value_or(ShotConfig{});
  BudgetConfig budget;
  budget.schedule_template = cfg.schedule;
  budget.lambda_max = cfg.lambda_max;
  budget.delta_lambda = cfg.delta_lambda;
  budget.total_shots_per_lambda = shots.budget_per_lambda;
  budget.seeds = shots.budget_seeds;
  if (opts.seed)
    for (std::size_t i = 0; i < budget.seeds.size(); ++i) budget.seeds[i] = *opts.seed + i;
  budget.p_grid = cfg.p_grid;
  budget.threads = resolve_threads(opts.threads);

  const auto report = budget_comparison(cfg.particle.build(cfg.grid), budget);
  std::ostringstream csv;
  write_budget_csv(csv, report);

  nlohmann::ordered_json meta;
  meta["rng_algorithm"] = kRngAlgorithm;
  meta["rng_version"] = kRngVersion;
  meta["config_hash"] = fmt::format("fnv1a64:{:016x}", cfg.hash());
  meta["budget_per_lambda"] = budget.total_shots_per_lambda;
  meta["seeds"] = budget.seeds;
  meta["framing"] = {
      {"separable", "equal total budget: budget/4 shots per setting, 4 settings per lambda"},
      {"entangled", "equal total budget: budget/2 shots per setting, 2 settings per lambda"},
      {"entangled_equal_per_setting", "equal per-setting count: budget/4 shots per setting, 2 settings per lambda"}};
  meta["note"] =
      "The L1 comparison is a Monte Carlo result of this tool; the measurement model itself only fixes the "
      "number of settings per lambda (4 separable, 2 entangled).";
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (const auto& s : report.summary)
    summary.push_back({{"scheme", s.scheme},
                       {"shots_per_setting", s.shots_per_setting},
                       {"mean_L1", g17(s.mean_l1)},
                       {"stddev_L1", g17(s.stddev_l1)}});
  meta["summary"] = summary;

  write_atomically(fs::path(cfg.output_dir) / "budget.csv", csv.str());
  write_atomically(fs::path(cfg.output_dir) / "budget_meta.json", meta.dump(2) + "\n");
  for (const auto& s : report.summary)
    std::cout << fmt::format("{:<28} shots/setting={:<8} mean L1={:.6g} sd={:.3g}\n", s.scheme, s.shots_per_setting,
                             s.mean_l1, s.stddev_l1);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit-pointer time-of-flight momentum measurement simulator"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "Scenario config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--seed", opts.seed, "RNG seed (overrides shots.seed)");
    sub->add_option("--engine", opts.engine, "Correlation engine")->check(CLI::IsMember({"analytic", "oracle"}));
    sub->add_option("--threads", opts.threads, "Worker threads (fallback: TOFQ_THREADS)")
        ->check(CLI::PositiveNumber);
  };
  auto* correlate = app.add_subcommand("correlate", "Correlation functions vs lambda");
  add_common(correlate);
  correlate->add_flag("--both-engines", opts.both_engines, "Emit analytic and oracle rows");
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct the momentum distribution");
  add_common(reconstruct);
  auto* oracle_check = app.add_subcommand("oracle-check", "Run the cross-module invariant sweep");
  add_common(oracle_check);
  auto* budget = app.add_subcommand("budget", "Separable vs entangled shot-budget comparison");
  add_common(budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  ScenarioConfig cfg;
  try {
    cfg = load_config(opts);
  } catch (const Error& e) {
    exit_with(kConfigError, to_string(e.kind()), e.what());
  }

  try {
    if (*correlate) return cmd_correlate(cfg, opts);
    if (*reconstruct) return cmd_reconstruct(cfg, opts);
    if (*oracle_check) return cmd_oracle_check(cfg, opts);
    if (*budget) return cmd_budget(cfg, opts);
  } catch (const Error& e) {
    exit_with(kNumericalGuard, to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    exit_with(kNumericalGuard, "internal", e.what());
  }
  return kOk;
}

#include "tofq/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <type_traits>

#include "json.hpp"

namespace tofq {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { fail(ErrorKind::Config, what); }

void allow_keys(const json& obj, std::string_view section, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) config_error(std::string(section) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) config_error("unknown key '" + key + "' in " + std::string(section));
  }
}

template <class T>
void read(const json& obj, std::string_view section, const char* key, T& target) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!obj.at(key).is_number_unsigned())
      config_error(std::string(section) + "." + key + " must be a non-negative integer");
  }
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    config_error("bad value for " + std::string(section) + "." + key);
  }
}

cplx read_weight(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  config_error("component weight must be a number or [re, im]");
}

GaussianComponent read_component(const json& j, std::string_view section) {
  GaussianComponent c;
  allow_keys(j, section, {"weight", "x0", "p0", "sigma"});
  if (j.contains("weight")) c.weight = read_weight(j.at("weight"));
  read(j, section, "x0", c.x0);
  read(j, section, "p0", c.p0);
  read(j, section, "sigma", c.sigma);
  return c;
}

json component_json(const GaussianComponent& c) {
  return {{"weight", {c.weight.real(), c.weight.imag()}}, {"x0", c.x0}, {"p0", c.p0}, {"sigma", c.sigma}};
}

Correlator correlator_from(const std::string& s) {
  if (s == "xx") return Correlator::XX;
  if (s == "yy") return Correlator::YY;
  config_error("scheme.which must be 'xx' or 'yy'");
}

}  // namespace

ParticleState ParticleSpec::build(const GridSpec& grid) const {
  if (components.empty()) config_error("particle needs at least one component");
  if (kind == Kind::Gaussian) {
    if (components.size() != 1) config_error("gaussian particle has exactly one component");
    const auto& c = components.front();
    return make_gaussian(grid, c.x0, c.p0, c.sigma);
  }
  std::vector<std::pair<cplx, ParticleState>> terms;
  for (const auto& c : components) terms.emplace_back(c.weight, make_gaussian(grid, c.x0, c.p0, c.sigma));
  return make_superposition(terms);
}

QubitPairState PointerSpec::build() const {
  switch (kind) {
    case Kind::Basis: return QubitPairState::basis(bit1, bit2);
    case Kind::Separable: return make_separable_optimal(phi1, phi2);
    case Kind::Bell: return make_bell(phi);
  }
  config_error("unknown pointer kind");
}

void ScenarioConfig::validate() const {
  grid.validate();
  (void)particle.build(grid);
  (void)pointer.build();
  if (!(schedule.t1 > 0.0) || !(schedule.T > schedule.t1))
    fail(ErrorKind::ScheduleInfeasible, "schedule needs 0 < t1 < T");
  if (schedule.kappa < 0.0 || schedule.omega < 0.0)
    fail(ErrorKind::InvalidArgument, "kappa and omega must be non-negative");
  const auto lambdas = make_lambda_grid(lambda_max, delta_lambda);
  if (schedule.kappa > 0.0)
    for (double lambda : lambdas) (void)schedule.schedule_for(lambda);
  if (!(lambda_max < 0.5 * grid.width()))
    fail(ErrorKind::LambdaOutOfRange, "lambda_max must stay below half the grid width");
  p_grid.validate();
  if (shots) {
    if (shots->shots_per_setting < 1) fail(ErrorKind::InvalidArgument, "shots_per_setting must be >= 1");
    if (shots->budget_seeds.empty()) fail(ErrorKind::InvalidArgument, "budget_seeds must not be empty");
    if (shots->budget_per_lambda != 0 && shots->budget_per_lambda < 4)
      fail(ErrorKind::InvalidArgument, "budget_per_lambda must be 0 or at least 4");
  }
  if (output_dir.empty()) fail(ErrorKind::InvalidArgument, "output.dir must not be empty");
}

std::string ScenarioConfig::to_json() const {
  json j;
  json comps = json::array();
  for (const auto& c : particle.components) comps.push_back(component_json(c));
  j["particle"] = {{"kind", particle.kind == ParticleSpec::Kind::Gaussian ? "gaussian" : "superposition"},
                   {"components", comps}};
  j["grid"] = {{"n_points", grid.n_points}, {"x_min", grid.x_min}, {"x_max", grid.x_max}};
  j["schedule"] = {{"kappa", schedule.kappa}, {"t1", schedule.t1}, {"T", schedule.T}, {"omega", schedule.omega}};
  j["lambda_grid"] = {{"lambda_max", lambda_max}, {"delta_lambda", delta_lambda}};
  j["p_grid"] = {{"p_min", p_grid.p_min}, {"p_max", p_grid.p_max}, {"n_points", p_grid.n_points}};
  j["scheme"] = {{"kind", scheme.kind == MeasurementScheme::Kind::Separable ? "separable" : "entangled"},
                 {"which", scheme.which == Correlator::XX ? "xx" : "yy"}};
  j["engine"] = std::string(to_string(engine));
  switch (pointer.kind) {
    case PointerSpec::Kind::Basis: j["pointer"] = {{"kind", "basis"}, {"bits", {pointer.bit1, pointer.bit2}}}; break;
    case PointerSpec::Kind::Separable:
      j["pointer"] = {{"kind", "separable"}, {"phi1", pointer.phi1}, {"phi2", pointer.phi2}};
      break;
    case PointerSpec::Kind::Bell: j["pointer"] = {{"kind", "bell"}, {"phi", pointer.phi}}; break;
  }
  if (shots)
    j["shots"] = {{"shots_per_setting", shots->shots_per_setting},
                  {"seed", shots->seed},
                  {"budget_per_lambda", shots->budget_per_lambda},
                  {"budget_seeds", shots->budget_seeds}};
  j["clip_negative"] = clip_negative;
  j["output"] = {{"dir", output_dir}};
  return j.dump(2) + "\n";
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  allow_keys(j, "config", {"particle", "grid", "schedule", "lambda_grid", "p_grid", "scheme", "engine", "pointer",
                           "shots", "clip_negative", "output"});
  ScenarioConfig c;

  if (j.contains("particle")) {
    const auto& p = j.at("particle");
    allow_keys(p, "particle", {"kind", "components", "x0", "p0", "sigma"});
    std::string kind = "gaussian";
    read(p, "particle", "kind", kind);
    if (kind == "gaussian") {
      c.particle.kind = ParticleSpec::Kind::Gaussian;
      if (p.contains("components")) {
        if (p.contains("x0") || p.contains("p0") || p.contains("sigma"))
          config_error("particle: give either components or x0/p0/sigma");
        const auto& comps = p.at("components");
        if (!comps.is_array() || comps.size() != 1) config_error("gaussian particle has exactly one component");
        c.particle.components = {read_component(comps[0], "particle.components")};
      } else {
        GaussianComponent g;
        read(p, "particle", "x0", g.x0);
        read(p, "particle", "p0", g.p0);
        read(p, "particle", "sigma", g.sigma);
        c.particle.components = {g};
      }
    } else if (kind == "superposition") {
      c.particle.kind = ParticleSpec::Kind::Superposition;
      if (!p.contains("components") || !p.at("components").is_array() || p.at("components").empty())
        config_error("superposition needs a non-empty components array");
      c.particle.components.clear();
      for (const auto& comp : p.at("components")) c.particle.components.push_back(read_component(comp, "particle.components"));
    } else {
      config_error("particle.kind must be 'gaussian' or 'superposition'");
    }
  }

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    allow_keys(g, "grid", {"n_points", "x_min", "x_max"});
    read(g, "grid", "n_points", c.grid.n_points);
    read(g, "grid", "x_min", c.grid.x_min);
    read(g, "grid", "x_max", c.grid.x_max);
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    allow_keys(s, "schedule", {"kappa", "t1", "T", "omega"});
    read(s, "schedule", "kappa", c.schedule.kappa);
    read(s, "schedule", "t1", c.schedule.t1);
    read(s, "schedule", "T", c.schedule.T);
    read(s, "schedule", "omega", c.schedule.omega);
  }
  if (j.contains("lambda_grid")) {
    const auto& l = j.at("lambda_grid");
    allow_keys(l, "lambda_grid", {"lambda_max", "delta_lambda"});
    read(l, "lambda_grid", "lambda_max", c.lambda_max);
    read(l, "lambda_grid", "delta_lambda", c.delta_lambda);
  }
  if (j.contains("p_grid")) {
    const auto& g = j.at("p_grid");
    allow_keys(g, "p_grid", {"p_min", "p_max", "n_points"});
    read(g, "p_grid", "p_min", c.p_grid.p_min);
    read(g, "p_grid", "p_max", c.p_grid.p_max);
    read(g, "p_grid", "n_points", c.p_grid.n_points);
  }
  if (j.contains("scheme")) {
    const auto& s = j.at("scheme");
    allow_keys(s, "scheme", {"kind", "which"});
    std::string kind = "entangled", which = "xx";
    read(s, "scheme", "kind", kind);
    read(s, "scheme", "which", which);
    if (kind == "separable") c.scheme = MeasurementScheme::separable();
    else if (kind == "entangled") c.scheme = MeasurementScheme::entangled(correlator_from(which));
    else config_error("scheme.kind must be 'separable' or 'entangled'");
  }
  if (j.contains("engine")) {
    std::string engine;
    read(j, "config", "engine", engine);
    if (engine == "analytic") c.engine = Engine::Analytic;
    else if (engine == "oracle") c.engine = Engine::Oracle;
    else config_error("engine must be 'analytic' or 'oracle'");
  }
  if (j.contains("pointer")) {
    const auto& p = j.at("pointer");
    allow_keys(p, "pointer", {"kind", "bits", "phi1", "phi2", "phi"});
    std::string kind = "bell";
    read(p, "pointer", "kind", kind);
    if (kind == "basis") {
      c.pointer.kind = PointerSpec::Kind::Basis;
      std::vector<int> bits{0, 0};
      read(p, "pointer", "bits", bits);
      if (bits.size() != 2) config_error("pointer.bits must hold two entries");
      c.pointer.bit1 = bits[0];
      c.pointer.bit2 = bits[1];
    } else if (kind == "separable") {
      c.pointer.kind = PointerSpec::Kind::Separable;
      read(p, "pointer", "phi1", c.pointer.phi1);
      read(p, "pointer", "phi2", c.pointer.phi2);
    } else if (kind == "bell") {
      c.pointer.kind = PointerSpec::Kind::Bell;
      read(p, "pointer", "phi", c.pointer.phi);
    } else {
      config_error("pointer.kind must be 'basis', 'separable' or 'bell'");
    }
  }
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    allow_keys(s, "shots", {"shots_per_setting", "seed", "budget_per_lambda", "budget_seeds"});
    ShotConfig shots;
    read(s, "shots", "shots_per_setting", shots.shots_per_setting);
    read(s, "shots", "seed", shots.seed);
    read(s, "shots", "budget_per_lambda", shots.budget_per_lambda);
    read(s, "shots", "budget_seeds", shots.budget_seeds);
    c.shots = shots;
  }
  read(j, "config", "clip_negative", c.clip_negative);
  if (j.contains("output")) {
    const auto& o = j.at("output");
    allow_keys(o, "output", {"dir"});
    read(o, "output", "dir", c.output_dir);
  }
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

std::uint64_t ScenarioConfig::hash() const {
  // Where the results land does not change them.
  ScenarioConfig inputs = *this;
  inputs.output_dir = "out";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : inputs.to_json()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tofq

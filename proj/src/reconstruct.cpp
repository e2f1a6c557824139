#include "tofq/reconstruct.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tofq/oracle.hpp"
#include "tofq/parallel.hpp"

namespace tofq {

std::string_view to_string(Engine engine) { return engine == Engine::Analytic ? "analytic" : "oracle"; }

std::string_view to_string(SampleSource source) {
  switch (source) {
    case SampleSource::Analytic: return "analytic";
    case SampleSource::Oracle: return "oracle";
    case SampleSource::Shots: return "shots";
  }
  return "unknown";
}

SampleSource sample_source_from_string(std::string_view name) {
  if (name == "analytic") return SampleSource::Analytic;
  if (name == "oracle") return SampleSource::Oracle;
  if (name == "shots") return SampleSource::Shots;
  fail(ErrorKind::InvalidArgument, "unknown sample source '" + std::string(name) + "'");
}

CouplingSchedule ScheduleTemplate::schedule_for(double lambda) const {
  if (!(kappa > 0.0)) fail(ErrorKind::ScheduleInfeasible, "lambda cannot be tuned with kappa <= 0");
  if (!(lambda > 0.0)) fail(ErrorKind::ScheduleInfeasible, "lambda must be positive");
  CouplingSchedule s{kappa, t1, t1 + lambda / (2.0 * kappa), T, omega};
  if (!(0.0 < s.t1 && s.t1 < s.t2 && s.t2 < s.T))
    fail(ErrorKind::ScheduleInfeasible,
         fmt::format("lambda = {} needs t2 = {} inside (t1, T) = ({}, {})", lambda, s.t2, s.t1, s.T));
  s.validate();
  return s;
}

std::vector<double> make_lambda_grid(double lambda_max, double delta_lambda) {
  if (!(delta_lambda > 0.0) || !(lambda_max >= delta_lambda) || !std::isfinite(lambda_max))
    fail(ErrorKind::InvalidArgument, "lambda grid needs 0 < delta_lambda <= lambda_max");
  const double steps = lambda_max / delta_lambda;
  const auto count = static_cast<std::size_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(count)) > 1e-9 * steps)
    fail(ErrorKind::NonUniformGrid, "lambda_max must be an integer multiple of delta_lambda");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = static_cast<double>(k + 1) * delta_lambda;
  return grid;
}

// ---------------------------------------------------------------------------
// CharFnSamples

std::vector<std::size_t> CharFnSamples::bound_violations() const {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double se = has_stderr() ? std::hypot(stderr_re[i], stderr_im[i]) : 0.0;
    if (std::abs(values[i]) > 1.0 + 3.0 * se + 1e-10) bad.push_back(i);
  }
  return bad;
}

void CharFnSamples::validate() const {
  if (lambdas.size() != values.size()) fail(ErrorKind::InvalidArgument, "lambda and value counts differ");
  if (has_stderr() && (stderr_re.size() != values.size() || stderr_im.size() != values.size()))
    fail(ErrorKind::InvalidArgument, "stderr columns do not match sample count");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) fail(ErrorKind::InvalidArgument, "sample lambdas must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      fail(ErrorKind::InvalidArgument, "sample lambdas must be strictly increasing");
    if (has_stderr() && (stderr_re[i] < 0.0 || stderr_im[i] < 0.0))
      fail(ErrorKind::InvalidArgument, "stderr must be non-negative");
  }
  // Shot-noise estimates can overshoot the 3-sigma bound by chance; callers
  // report those through bound_violations() instead.
  if (source == SampleSource::Shots) return;
  if (const auto bad = bound_violations(); !bad.empty())
    fail(ErrorKind::InvalidArgument, fmt::format("|C(lambda)| exceeds its bound at lambda = {}", lambdas[bad.front()]));
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<double> setting_means(const ParticleState& particle, const CouplingSchedule& schedule,
                                  const std::vector<MeasurementSetting>& settings, Engine engine) {
  std::vector<double> means(settings.size());
  std::vector<bool> done(settings.size(), false);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (done[i]) continue;
    const auto& qubits = settings[i].qubits;
    CorrelationPair pair;
    if (engine == Engine::Analytic) {
      pair = correlations(particle, qubits, schedule);
    } else {
      const auto final_state = run_schedule(particle, qubits, schedule);
      pair = {expect_two_qubit(final_state, TwoQubitObservable::xx()),
              expect_two_qubit(final_state, TwoQubitObservable::yy())};
    }
    for (std::size_t j = i; j < settings.size(); ++j) {
      if (done[j] || settings[j].qubits.amplitudes() != qubits.amplitudes()) continue;
      means[j] = settings[j].observable == Correlator::XX ? pair.xx : pair.yy;
      done[j] = true;
    }
  }
  return means;
}

CharFnSamples sample_char_fn(const ParticleState& particle, const ScheduleTemplate& schedule_template,
                             const MeasurementScheme& scheme, const std::vector<double>& lambdas, Engine engine,
                             unsigned threads) {
  // Reject infeasible lambdas before doing any work.
  std::vector<CouplingSchedule> schedules;
  schedules.reserve(lambdas.size());
  for (double lambda : lambdas) schedules.push_back(schedule_template.schedule_for(lambda));

  const auto settings = measurement_settings(scheme);
  CharFnSamples out;
  out.lambdas = lambdas;
  out.values.resize(lambdas.size());
  out.source = engine == Engine::Analytic ? SampleSource::Analytic : SampleSource::Oracle;
  parallel_for(lambdas.size(), threads, [&](std::size_t i) {
    const auto means = setting_means(particle, schedules[i], settings, engine);
    cplx value{};
    for (std::size_t s = 0; s < settings.size(); ++s)
      value += settings[s].part == Part::Real ? cplx{means[s], 0.0} : cplx{0.0, means[s]};
    out.values[i] = value;
  });
  out.validate();
  return out;
}

SymmetricCharFn extend_hermitian(const CharFnSamples& samples) {
  samples.validate();
  const std::size_t m = samples.lambdas.size();
  SymmetricCharFn out;
  out.lambdas.reserve(2 * m + 1);
  out.values.reserve(2 * m + 1);
  for (std::size_t i = m; i-- > 0;) {
    out.lambdas.push_back(-samples.lambdas[i]);
    out.values.push_back(std::conj(samples.values[i]));
  }
  out.lambdas.push_back(0.0);
  out.values.push_back(1.0);
  for (std::size_t i = 0; i < m; ++i) {
    out.lambdas.push_back(samples.lambdas[i]);
    out.values.push_back(samples.values[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inversion

void PGrid::validate() const {
  if (n_points < 2 || !(p_max > p_min) || !std::isfinite(p_min) || !std::isfinite(p_max))
    fail(ErrorKind::InvalidArgument, "momentum grid needs n_points >= 2 and p_max > p_min");
}

std::vector<double> PGrid::points() const {
  validate();
  std::vector<double> ps(n_points);
  for (std::size_t j = 0; j < n_points; ++j) ps[j] = p_min + static_cast<double>(j) * dp();
  return ps;
}

double MomentumDistribution::mass() const {
  if (p_grid.size() < 2) return 0.0;
  const double dp = p_grid[1] - p_grid[0];
  double sum = 0.0;
  for (double d : density) sum += d;
  return sum * dp;
}

MomentumDistribution invert_to_momentum_distribution(const SymmetricCharFn& samples, const std::vector<double>& p_grid,
                                                     const InversionOptions& options) {
  const auto& lam = samples.lambdas;
  const std::size_t n = lam.size();
  if (n < 3 || n % 2 == 0 || samples.values.size() != n)
    fail(ErrorKind::AsymmetricSamples, "inversion needs an odd number of samples centred on lambda = 0");
  const std::size_t mid = n / 2;
  const double dl = lam[mid + 1] - lam[mid];
  if (!(dl > 0.0)) fail(ErrorKind::NonUniformGrid, "lambda grid must be increasing");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs((lam[i] - lam[i - 1]) - dl) > 1e-9 * dl)
      fail(ErrorKind::NonUniformGrid, "lambda grid is not uniform");
  if (lam[mid] != 0.0) fail(ErrorKind::AsymmetricSamples, "centre sample is not lambda = 0");
  for (std::size_t k = 1; k <= mid; ++k) {
    if (std::abs(lam[mid + k] + lam[mid - k]) > 1e-9 * dl ||
        std::abs(samples.values[mid + k] - std::conj(samples.values[mid - k])) > 1e-12)
      fail(ErrorKind::AsymmetricSamples, "samples are not Hermitian-symmetric about lambda = 0");
  }

  MomentumDistribution out;
  out.p_grid = p_grid;
  out.density.resize(p_grid.size());
  out.truncation_bound = std::abs(samples.values.back());
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    // Pair +lambda with -lambda so the imaginary parts cancel term by term.
    const double p = p_grid[j];
    cplx sum = samples.values[mid];
    for (std::size_t k = 1; k <= mid; ++k) {
      const double w = k == mid ? 0.5 : 1.0;
      sum += w * (samples.values[mid + k] * std::polar(1.0, -lam[mid + k] * p) +
                  samples.values[mid - k] * std::polar(1.0, -lam[mid - k] * p));
    }
    sum *= dl / (2.0 * std::numbers::pi);
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(sum.imag()));
    out.density[j] = sum.real();
  }
  if (out.max_imag_residue > 1e-10)
    fail(ErrorKind::AsymmetricSamples, fmt::format("inversion left imaginary residue {}", out.max_imag_residue));

  double most_negative = 0.0;
  for (double& d : out.density) {
    most_negative = std::min(most_negative, d);
    if (options.clip_negative && d < 0.0) d = 0.0;
  }
  if (most_negative < options.negative_warning_threshold)
    out.warnings.push_back(fmt::format("density reaches {:.3g} below zero{}", most_negative,
                                       options.clip_negative ? " (clipped)" : ""));
  return out;
}

namespace {

std::vector<std::size_t> local_peaks(const std::vector<double>& d) {
  double top = 0.0;
  for (double v : d) top = std::max(top, v);
  std::vector<std::size_t> peaks;
  for (std::size_t j = 1; j + 1 < d.size(); ++j)
    if (d[j] > d[j - 1] && d[j] >= d[j + 1] && d[j] >= 0.1 * top) peaks.push_back(j);
  return peaks;
}

}  // namespace

DistributionMetrics compare_distributions(const MomentumDistribution& estimate, const MomentumDistribution& reference) {
  const auto& pe = estimate.p_grid;
  const auto& pr = reference.p_grid;
  if (pe.size() != pr.size() || pe.size() < 2 || estimate.density.size() != pe.size() ||
      reference.density.size() != pr.size())
    fail(ErrorKind::MismatchedGrid, "distributions do not share a momentum grid");
  const double dp = pr[1] - pr[0];
  for (std::size_t j = 0; j < pr.size(); ++j)
    if (std::abs(pe[j] - pr[j]) > 1e-9 * std::abs(dp))
      fail(ErrorKind::MismatchedGrid, "distributions do not share a momentum grid");

  DistributionMetrics m;
  for (std::size_t j = 0; j < pr.size(); ++j) {
    const double diff = std::abs(estimate.density[j] - reference.density[j]);
    m.l1 += diff;
    m.linf = std::max(m.linf, diff);
  }
  m.l1 *= dp;
  m.total_variation = 0.5 * m.l1;

  const auto ref_peaks = local_peaks(reference.density);
  const auto est_peaks = local_peaks(estimate.density);
  for (std::size_t r : ref_peaks) {
    if (est_peaks.empty()) break;
    std::size_t best = est_peaks.front();
    for (std::size_t e : est_peaks)
      if (std::abs(pe[e] - pr[r]) < std::abs(pe[best] - pr[r])) best = e;
    m.peak_offsets.push_back(pe[best] - pr[r]);
  }
  return m;
}

MomentumDistribution exact_momentum_density(const ParticleState& particle, const std::vector<double>& p_grid) {
  const GridSpec& grid = particle.grid();
  const auto psi = particle.amplitudes();
  const double prefactor = grid.dx() / std::sqrt(2.0 * std::numbers::pi);
  MomentumDistribution out;
  out.p_grid = p_grid;
  out.density.resize(p_grid.size());
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    const double p = p_grid[k];
    cplx sum{};
    for (std::size_t j = 0; j < psi.size(); ++j) sum += psi[j] * std::polar(1.0, -p * grid.x(j));
    out.density[k] = std::norm(prefactor * sum);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail(ErrorKind::Io, fmt::format("line {}: cannot parse number '{}'", line_no, field));
  return value;
}

}  // namespace

void write_char_fn_csv(std::ostream& out, const CharFnSamples& samples) {
  out << "lambda,re,im,stderr_re,stderr_im,source\n";
  for (std::size_t i = 0; i < samples.lambdas.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},", samples.lambdas[i], samples.values[i].real(),
                       samples.values[i].imag());
    if (samples.has_stderr()) out << fmt::format("{:.17g},{:.17g}", samples.stderr_re[i], samples.stderr_im[i]);
    else out << ',';
    out << ',' << to_string(samples.source) << '\n';
  }
}

CharFnSamples read_char_fn_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "lambda,re,im,stderr_re,stderr_im,source")
    fail(ErrorKind::Io, "char-fn CSV must start with header 'lambda,re,im,stderr_re,stderr_im,source'");
  CharFnSamples samples;
  std::size_t line_no = 1;
  bool first = true;
  bool with_stderr = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_row(line);
    if (fields.size() != 6) fail(ErrorKind::Io, fmt::format("line {}: expected 6 fields", line_no));
    const bool row_has_stderr = !fields[3].empty() || !fields[4].empty();
    const auto source = sample_source_from_string(fields[5]);
    if (first) {
      samples.source = source;
      with_stderr = row_has_stderr;
      first = false;
    } else if (source != samples.source || row_has_stderr != with_stderr) {
      fail(ErrorKind::Io, fmt::format("line {}: inconsistent source or stderr columns", line_no));
    }
    samples.lambdas.push_back(parse_double(fields[0], line_no));
    samples.values.emplace_back(parse_double(fields[1], line_no), parse_double(fields[2], line_no));
    if (with_stderr) {
      samples.stderr_re.push_back(parse_double(fields[3], line_no));
      samples.stderr_im.push_back(parse_double(fields[4], line_no));
    }
  }
  samples.validate();
  return samples;
}

}  // namespace tofq

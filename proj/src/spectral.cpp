#include "tofq/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace tofq::spectral {
namespace {

// FFTW planning is not thread-safe but executing an existing plan on new
// arrays is, so plans are created once per (size, direction) under a lock
// and reused with fftw_execute_dft.
struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_plan cached_plan(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, PlanHandle> plans;
  std::lock_guard lock(mutex);
  auto& slot = plans[{n, sign}];
  if (!slot) {
    std::vector<cplx> scratch_in(n), scratch_out(n);
    slot.reset(fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                sign, FFTW_ESTIMATE | FFTW_UNALIGNED));
  }
  return slot.get();
}

CVector run(std::span<const cplx> data, int sign) {
  CVector in(data.begin(), data.end());
  CVector out(data.size());
  if (data.empty()) return out;
  fftw_execute_dft(cached_plan(data.size(), sign),
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

CVector forward(std::span<const cplx> data) { return run(data, FFTW_FORWARD); }

CVector inverse(std::span<const cplx> data) {
  CVector out = run(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> fft_wavenumbers(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    auto m = static_cast<std::ptrdiff_t>(j);
    if (m >= half) m -= static_cast<std::ptrdiff_t>(n);
    k[j] = dk * static_cast<double>(m);
  }
  return k;
}

}  // namespace tofq::spectral

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tofq {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

namespace spectral {

// Unnormalized forward DFT, sum_j a_j exp(-2 pi i jk/N).
CVector forward(std::span<const cplx> data);

// Inverse DFT including the 1/N factor, so inverse(forward(a)) == a.
CVector inverse(std::span<const cplx> data);

// Angular wavenumbers in FFT storage order for a grid of n points with
// spacing dx: k_j = 2 pi m / (n dx), m = 0..n/2-1, -n/2..-1.
std::vector<double> fft_wavenumbers(std::size_t n, double dx);

// Multiplies the spectrum of `data` pointwise by phase(k) and transforms
// back. Used for exact free propagation and for off-grid translations.
template <class PhaseFn>
CVector apply_spectral_phase(std::span<const cplx> data, double dx, PhaseFn&& phase) {
  CVector spec = forward(data);
  const auto k = fft_wavenumbers(data.size(), dx);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= phase(k[j]);
  return inverse(spec);
}

}  // namespace spectral
}  // namespace tofq

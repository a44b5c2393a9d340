#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "kdvbbm/errors.hpp"
#include "kdvbbm/fft.hpp"
#include "kdvbbm/grid.hpp"

namespace kdvbbm {

using complex = std::complex<double>;

enum class Direction { analysis, synthesis };

// A periodic function carried as paired physical samples and Fourier
// coefficients. spectrum[slot(k)] is the coefficient of exp(i*xi_k*x) in
// f(x) = sum_k spectrum[k] exp(i*xi_k*x); analysis carries the 1/N factor,
// synthesis carries none, so Parseval reads |f|_2^2 = L * sum |spectrum|^2.
// Samples are stored complex: model states are real-valued, but multiplier
// images of real fields (odd real symbols) are purely imaginary, and both
// live in this one type. Realness is a checkable property, not a constraint.
struct Field {
  Grid grid;
  std::vector<complex> samples;
  std::vector<complex> spectrum;
  bool samples_valid = false;
  bool spectrum_valid = false;
};

namespace detail {

// The node offset x_0 = -L/2 shows up as exp(i*xi_k*x_j) =
// (-1)^k exp(2*pi*i*k*j/N); N is even, so (-1)^k = (-1)^m for slot m.
inline double slot_sign(std::size_t m) { return (m & 1u) ? -1.0 : 1.0; }

inline void analysis_into(const Grid& g, const std::vector<complex>& samples,
                          std::vector<complex>& spectrum) {
  spectrum.resize(g.N);
  dft_forward(g.N, samples.data(), spectrum.data());
  const double scale = 1.0 / static_cast<double>(g.N);
  for (std::size_t m = 0; m < g.N; ++m) spectrum[m] *= slot_sign(m) * scale;
}

inline void synthesis_into(const Grid& g, const std::vector<complex>& spectrum,
                           std::vector<complex>& samples) {
  std::vector<complex> phased(g.N);
  for (std::size_t m = 0; m < g.N; ++m) phased[m] = spectrum[m] * slot_sign(m);
  samples.resize(g.N);
  dft_backward(g.N, phased.data(), samples.data());
}

}  // namespace detail

inline Field zero_field(const Grid& g) {
  Field f;
  f.grid = g;
  f.samples.assign(g.N, complex{0.0, 0.0});
  f.spectrum.assign(g.N, complex{0.0, 0.0});
  f.samples_valid = true;
  f.spectrum_valid = true;
  return f;
}

inline Field field_from_samples(const Grid& g, std::vector<complex> samples) {
  if (samples.size() != g.N)
    throw shape_error("field_from_samples: sample count does not match grid");
  Field f;
  f.grid = g;
  f.samples = std::move(samples);
  f.samples_valid = true;
  return f;
}

inline Field field_from_spectrum(const Grid& g, std::vector<complex> spectrum) {
  if (spectrum.size() != g.N)
    throw shape_error("field_from_spectrum: coefficient count does not match grid");
  Field f;
  f.grid = g;
  f.spectrum = std::move(spectrum);
  f.spectrum_valid = true;
  return f;
}

// Samples a scalar function of x on the grid nodes.
template <class F>
Field sample_function(const Grid& g, F&& fn) {
  std::vector<complex> samples(g.N);
  for (std::size_t j = 0; j < g.N; ++j) samples[j] = complex{fn(g.node(j))};
  return field_from_samples(g, std::move(samples));
}

// Single spectral tone amp * exp(i*xi_k*x).
inline Field tone(const Grid& g, long k, complex amp = complex{1.0, 0.0}) {
  std::vector<complex> spectrum(g.N, complex{0.0, 0.0});
  spectrum[g.slot(k)] = amp;
  return field_from_spectrum(g, std::move(spectrum));
}

inline void ensure_spectrum(Field& f) {
  if (f.spectrum_valid) return;
  if (!f.samples_valid) throw shape_error("ensure_spectrum: field has no valid representation");
  detail::analysis_into(f.grid, f.samples, f.spectrum);
  f.spectrum_valid = true;
}

inline void ensure_samples(Field& f) {
  if (f.samples_valid) return;
  if (!f.spectrum_valid) throw shape_error("ensure_samples: field has no valid representation");
  detail::synthesis_into(f.grid, f.spectrum, f.samples);
  f.samples_valid = true;
}

inline Field transform(const Field& field, Direction direction) {
  Field out = field;
  if (direction == Direction::analysis) {
    if (!out.samples_valid) throw shape_error("transform(analysis): samples not available");
    detail::analysis_into(out.grid, out.samples, out.spectrum);
    out.spectrum_valid = true;
  } else {
    if (!out.spectrum_valid) throw shape_error("transform(synthesis): spectrum not available");
    detail::synthesis_into(out.grid, out.spectrum, out.samples);
    out.samples_valid = true;
  }
  return out;
}

inline const std::vector<complex>& spectrum_of(Field& f) {
  ensure_spectrum(f);
  return f.spectrum;
}

inline const std::vector<complex>& samples_of(Field& f) {
  ensure_samples(f);
  return f.samples;
}

// alpha*a + beta*b, formed spectrally.
inline Field lincomb(complex alpha, const Field& a, complex beta, const Field& b) {
  if (!(a.grid == b.grid)) throw shape_error("lincomb: fields live on different grids");
  Field aa = a, bb = b;
  ensure_spectrum(aa);
  ensure_spectrum(bb);
  Field out;
  out.grid = a.grid;
  out.spectrum.resize(a.grid.N);
  for (std::size_t m = 0; m < a.grid.N; ++m)
    out.spectrum[m] = alpha * aa.spectrum[m] + beta * bb.spectrum[m];
  out.spectrum_valid = true;
  return out;
}

inline Field add(const Field& a, const Field& b) { return lincomb({1, 0}, a, {1, 0}, b); }
inline Field sub(const Field& a, const Field& b) { return lincomb({1, 0}, a, {-1, 0}, b); }

inline Field scaled(const Field& a, complex alpha) {
  Field out = a;
  if (out.spectrum_valid)
    for (auto& c : out.spectrum) c *= alpha;
  if (out.samples_valid)
    for (auto& c : out.samples) c *= alpha;
  return out;
}

// Largest |Im| over the physical samples; a realness diagnostic.
inline double max_imag(const Field& f) {
  Field g = f;
  ensure_samples(g);
  double worst = 0.0;
  for (const auto& s : g.samples) worst = std::max(worst, std::abs(s.imag()));
  return worst;
}

// Largest violation of the real-field symmetry spectrum(-k) == conj(spectrum(k)),
// including the reality of the mean and Nyquist modes.
inline double hermitian_residual(const Field& f) {
  Field g = f;
  ensure_spectrum(g);
  const Grid& gr = g.grid;
  double worst = std::abs(g.spectrum[0].imag());
  worst = std::max(worst, std::abs(g.spectrum[gr.nyquist_slot()].imag()));
  for (long k = 1; k < static_cast<long>(gr.N / 2); ++k) {
    const complex diff = g.spectrum[gr.slot(-k)] - std::conj(g.spectrum[gr.slot(k)]);
    worst = std::max(worst, std::abs(diff));
  }
  return worst;
}

// Drops the imaginary part of the samples.
inline Field real_part(const Field& f) {
  Field g = f;
  ensure_samples(g);
  Field out;
  out.grid = g.grid;
  out.samples.resize(g.grid.N);
  for (std::size_t j = 0; j < g.grid.N; ++j) out.samples[j] = complex{g.samples[j].real(), 0.0};
  out.samples_valid = true;
  return out;
}

}  // namespace kdvbbm

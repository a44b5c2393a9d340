#pragma once

// Brute-force reference implementations for the spectral tests. Everything
// here is deliberately independent of the library's transform path: direct
// O(N^2) Fourier sums under the same convention (coefficients of
// exp(i*xi_k*x), analysis carries 1/N), plus exact mode-indexed convolutions
// for products of band-limited fields, and a tiny deterministic generator.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "kdvbbm/grid.hpp"

namespace oracle {

using kdvbbm::Grid;
using complexd = std::complex<double>;

// f_hat[slot(k)] = (1/N) * sum_j f_j * exp(-i*xi_k*x_j), by direct summation.
inline std::vector<complexd> analysis(const Grid& g, const std::vector<complexd>& samples) {
  std::vector<complexd> spectrum(g.N);
  for (std::size_t m = 0; m < g.N; ++m) {
    const double xi = g.freq(m);
    complexd acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.N; ++j) {
      const double phase = -xi * g.node(j);
      acc += samples[j] * complexd{std::cos(phase), std::sin(phase)};
    }
    spectrum[m] = acc / static_cast<double>(g.N);
  }
  return spectrum;
}

// f_j = sum_k f_hat_k * exp(i*xi_k*x_j), by direct summation.
inline std::vector<complexd> synthesis(const Grid& g, const std::vector<complexd>& spectrum) {
  std::vector<complexd> samples(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const double x = g.node(j);
    complexd acc{0.0, 0.0};
    for (std::size_t m = 0; m < g.N; ++m) {
      const double phase = g.freq(m) * x;
      acc += spectrum[m] * complexd{std::cos(phase), std::sin(phase)};
    }
    samples[j] = acc;
  }
  return samples;
}

// Exact product spectrum by mode-indexed convolution. Inputs and output are
// maps mode k -> coefficient; no grid, no aliasing. For trigonometric
// polynomials this is the continuum product restricted to nothing.
using ModeMap = std::map<long, complexd>;

inline ModeMap to_modes(const Grid& g, const std::vector<complexd>& spectrum) {
  ModeMap modes;
  for (std::size_t m = 0; m < g.N; ++m)
    if (spectrum[m] != complexd{0.0, 0.0}) modes[g.mode(m)] = spectrum[m];
  return modes;
}

inline ModeMap convolve(const ModeMap& a, const ModeMap& b) {
  ModeMap out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out[ka + kb] += ca * cb;
  return out;
}

// Restriction of a mode map back to grid slots; modes beyond the grid band
// are dropped (the dealiased product is exactly this restriction).
inline std::vector<complexd> to_grid(const Grid& g, const ModeMap& modes) {
  std::vector<complexd> spectrum(g.N, complexd{0.0, 0.0});
  const long lo = -static_cast<long>(g.N / 2), hi = static_cast<long>(g.N / 2) - 1;
  for (const auto& [k, c] : modes)
    if (k >= lo && k <= hi) spectrum[g.slot(k)] = c;
  return spectrum;
}

// splitmix64; the standard 64-bit finalizer-based generator.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  double uniform() {  // in (0,1)
    state = mix64(state);
    return (static_cast<double>(state >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Random real band-limited field samples for round-trip and property tests.
inline std::vector<complexd> random_real_samples(const Grid& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<complexd> samples(g.N);
  for (std::size_t j = 0; j < g.N; ++j) samples[j] = complexd{rng.uniform(-1.0, 1.0), 0.0};
  return samples;
}

}  // namespace oracle

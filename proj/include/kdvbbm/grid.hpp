#pragma once

#include <cstddef>
#include <numbers>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

inline constexpr double pi = std::numbers::pi;

// Periodic grid on [-L/2, L/2) with N equispaced nodes x_j = -L/2 + j*L/N and
// frequencies xi_k = 2*pi*k/L for k in {-N/2, ..., N/2-1}. Spectra are stored
// in FFT slot order: slot m holds mode k = m for m < N/2 and k = m - N above.
struct Grid {
  double L = 0.0;
  std::size_t N = 0;

  double dx() const { return L / static_cast<double>(N); }
  double dxi() const { return 2.0 * pi / L; }
  double node(std::size_t j) const { return -0.5 * L + dx() * static_cast<double>(j); }

  long mode(std::size_t m) const {
    return m < N / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(N);
  }
  // Computed as dxi()*k so the same (L, k) gives the bit-identical frequency
  // at every resolution; nested ensembles rely on this.
  double freq(std::size_t m) const { return dxi() * static_cast<double>(mode(m)); }
  double freq_of_mode(long k) const { return dxi() * static_cast<double>(k); }

  std::size_t slot(long k) const {
    return static_cast<std::size_t>((k + static_cast<long>(N)) % static_cast<long>(N));
  }
  std::size_t nyquist_slot() const { return N / 2; }
  // Largest positive representable frequency, (N/2-1)*dxi.
  double max_freq() const { return dxi() * static_cast<double>(N / 2 - 1); }

  bool operator==(const Grid&) const = default;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline Grid make_grid(double L, std::size_t N) {
  if (!(L > 0.0)) throw config_error("make_grid: L must be positive");
  if (N < 8 || !is_power_of_two(N))
    throw config_error("make_grid: N must be a power of two with N >= 8");
  return Grid{L, N};
}

}  // namespace kdvbbm

#pragma once

#include <cmath>
#include <cstdlib>

#include "kdvbbm/field.hpp"
#include "kdvbbm/window.hpp"

namespace kdvbbm {

// Frequency-uniform projector: multiplies the spectrum by sigma(xi - n), so
// the image is supported in the band (n-1, n+1).
inline Field project_uniform(const Field& f, long n,
                             WindowKind window = WindowKind::raised_cosine) {
  Field in = f;
  ensure_spectrum(in);
  Field out;
  out.grid = in.grid;
  out.spectrum.resize(in.grid.N);
  for (std::size_t m = 0; m < in.grid.N; ++m)
    out.spectrum[m] =
        window_sigma(in.grid.freq(m) - static_cast<double>(n), window) * in.spectrum[m];
  out.spectrum_valid = true;
  return out;
}

// L2 norm of the band piece, evaluated on the spectrum without a transform:
// by Parseval it is sqrt(L * sum sigma(xi-n)^2 |spectrum|^2).
inline double band_l2(const Field& f, long n, WindowKind window = WindowKind::raised_cosine) {
  Field in = f;
  ensure_spectrum(in);
  double total = 0.0;
  for (std::size_t m = 0; m < in.grid.N; ++m) {
    const double w = window_sigma(in.grid.freq(m) - static_cast<double>(n), window);
    if (w != 0.0) total += w * w * std::norm(in.spectrum[m]);
  }
  return std::sqrt(in.grid.L * total);
}

// Band indices n whose window can meet a grid frequency: every |xi| is at
// most pi*N/L (the Nyquist magnitude), and the window reaches one unit past.
inline long band_limit_index(const Grid& g) {
  const double xi_extreme = pi * static_cast<double>(g.N) / g.L;
  return static_cast<long>(std::ceil(xi_extreme)) + 1;
}

// Littlewood-Paley projector with sharp cutoffs: |xi| <= 1 for N = 1 and
// N/2 < |xi| <= N for dyadic N >= 2. The pieces tile frequency space, so the
// reconstruction sum telescopes exactly.
inline Field project_dyadic(const Field& f, double N_dyadic) {
  if (!(N_dyadic >= 1.0) || std::log2(N_dyadic) != std::floor(std::log2(N_dyadic)))
    throw config_error("project_dyadic: scale must be dyadic (1, 2, 4, ...)");
  Field in = f;
  ensure_spectrum(in);
  Field out;
  out.grid = in.grid;
  out.spectrum.assign(in.grid.N, complex{0.0, 0.0});
  const double lo = N_dyadic == 1.0 ? -1.0 : 0.5 * N_dyadic;  // exclusive, |xi| > lo
  for (std::size_t m = 0; m < in.grid.N; ++m) {
    const double a = std::abs(in.grid.freq(m));
    if (a > lo && a <= N_dyadic) out.spectrum[m] = in.spectrum[m];
  }
  out.spectrum_valid = true;
  return out;
}

// Smallest dyadic N such that the annuli up to N cover every grid frequency.
inline double dyadic_cover(const Grid& g) {
  const double xi_extreme = pi * static_cast<double>(g.N) / g.L;
  double N = 1.0;
  while (N < xi_extreme) N *= 2.0;
  return N;
}

}  // namespace kdvbbm

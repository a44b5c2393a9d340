#pragma once

#include <complex>
#include <vector>

#include "kdvbbm/field.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

// Phase table exp(-i*phi(xi)*t) for the free evolution on a fixed grid.
inline std::vector<complex> semigroup_phases(const Grid& g, double t, const ModelParams& p) {
  std::vector<complex> phases(g.N);
  for (std::size_t m = 0; m < g.N; ++m)
    phases[m] = std::polar(1.0, -symbol_eval(SymbolKind::phi, g.freq(m), p) * t);
  return phases;
}

// Free evolution: multiplies the spectrum by exp(-i*phi(xi)*t). phi is odd
// and real, so real data stays real and every spectral-weight norm is
// preserved exactly.
inline Field semigroup(const Field& f, double t, const ModelParams& p) {
  Field in = f;
  ensure_spectrum(in);
  const auto phases = semigroup_phases(in.grid, t, p);
  Field out;
  out.grid = in.grid;
  out.spectrum.resize(in.grid.N);
  for (std::size_t m = 0; m < in.grid.N; ++m) out.spectrum[m] = phases[m] * in.spectrum[m];
  out.spectrum_valid = true;
  return out;
}

}  // namespace kdvbbm

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kdvbbm/field.hpp"

namespace kdvbbm {

// A Fourier multiplier operator given by its symbol xi -> m(xi).
struct MultiplierSymbol {
  std::string name;
  std::function<complex(double)> eval;
};

// Tabulates the symbol on the grid frequencies, rejecting NaN/Inf values.
inline std::vector<complex> tabulate_symbol(const Grid& g, const MultiplierSymbol& m) {
  std::vector<complex> values(g.N);
  for (std::size_t slot = 0; slot < g.N; ++slot) {
    const complex v = m.eval(g.freq(slot));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw symbol_error("symbol '" + m.name + "' is not finite at xi = " +
                         std::to_string(g.freq(slot)));
    values[slot] = v;
  }
  return values;
}

inline Field apply_tabulated(const Field& f, const std::vector<complex>& symbol_values) {
  Field in = f;
  ensure_spectrum(in);
  if (symbol_values.size() != in.grid.N)
    throw shape_error("apply_tabulated: symbol table does not match grid");
  Field out;
  out.grid = in.grid;
  out.spectrum.resize(in.grid.N);
  for (std::size_t m = 0; m < in.grid.N; ++m)
    out.spectrum[m] = symbol_values[m] * in.spectrum[m];
  out.spectrum_valid = true;
  return out;
}

inline Field apply_multiplier(const Field& f, const MultiplierSymbol& m) {
  return apply_tabulated(f, tabulate_symbol(f.grid, m));
}

// Spectral derivative of the given order via the (i*xi)^order multiplier.
// Odd orders zero the unpaired Nyquist mode so real fields stay real.
inline Field derivative(const Field& f, unsigned order) {
  if (order > 5) throw config_error("derivative: orders above 5 are not supported");
  if (order == 0) return f;
  Field in = f;
  ensure_spectrum(in);
  Field out;
  out.grid = in.grid;
  out.spectrum.resize(in.grid.N);
  const bool odd = (order % 2u) != 0u;
  for (std::size_t m = 0; m < in.grid.N; ++m) {
    const complex ixi{0.0, in.grid.freq(m)};
    complex factor{1.0, 0.0};
    for (unsigned r = 0; r < order; ++r) factor *= ixi;
    out.spectrum[m] = factor * in.spectrum[m];
  }
  if (odd) out.spectrum[in.grid.nyquist_slot()] = complex{0.0, 0.0};
  out.spectrum_valid = true;
  return out;
}

}  // namespace kdvbbm

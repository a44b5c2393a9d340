#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvbbm/field.hpp"

namespace kdvbbm {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Periodic trapezoid rule (= rectangle rule on a torus): dx * sum of samples.
// Spectrally accurate for smooth periodic integrands. Returns the real part;
// physically meaningful integrands here are real.
inline double quadrature(const Field& f) {
  Field g = f;
  ensure_samples(g);
  complex total{0.0, 0.0};
  for (const auto& s : g.samples) total += s;
  return (g.grid.dx() * total).real();
}

// (dx * sum |samples|^p)^(1/p); max |samples| at p = infinity. For p = 2 this
// agrees with the spectral Parseval value sqrt(L * sum |spectrum|^2).
inline double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw config_error("lp_norm: p must satisfy p >= 1");
  Field g = f;
  ensure_samples(g);
  if (p == inf) {
    double worst = 0.0;
    for (const auto& s : g.samples) worst = std::max(worst, std::abs(s));
    return worst;
  }
  double total = 0.0;
  if (p == 2.0) {
    for (const auto& s : g.samples) total += std::norm(s);
  } else {
    for (const auto& s : g.samples) total += std::pow(std::abs(s), p);
  }
  return std::pow(g.grid.dx() * total, 1.0 / p);
}

// L2 norm evaluated on the spectrum: sqrt(L * sum |spectrum|^2). Equal to
// lp_norm(f, 2) by Parseval under the fixed transform normalization.
inline double spectral_l2(const Field& f) {
  Field g = f;
  ensure_spectrum(g);
  double total = 0.0;
  for (const auto& c : g.spectrum) total += std::norm(c);
  return std::sqrt(g.grid.L * total);
}

}  // namespace kdvbbm

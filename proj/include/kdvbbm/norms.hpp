#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kdvbbm/bands.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

// Which function-space family a norm request refers to.
enum class SpaceKind { Modulation, SobolevLp, FourierLebesgue };

// Norm request: Modulation M_s^{r,p} is the ell^p over bands n of
// <n>^s * |Pi_n f|_{L^r} (r = 2 is the default space M^{s,p}); SobolevLp is
// the L^p norm of (1 - d^2/dx^2)^{s/2} f; FourierLebesgue weights |spectrum|
// by <xi>^s in a discrete L^p in xi.
struct NormSpec {
  SpaceKind space = SpaceKind::Modulation;
  double s = 0.0;
  double r = 2.0;  // inner Lebesgue exponent, modulation only
  double p = 2.0;  // outer exponent
  WindowKind window = WindowKind::raised_cosine;
};

inline NormSpec modulation_spec(double s, double p, double r = 2.0) {
  return NormSpec{SpaceKind::Modulation, s, r, p, WindowKind::raised_cosine};
}

inline NormSpec sobolev_spec(double s, double p) {
  return NormSpec{SpaceKind::SobolevLp, s, 2.0, p, WindowKind::raised_cosine};
}

inline void validate_norm_spec(const NormSpec& spec) {
  if (!(spec.p >= 1.0)) throw config_error("norm spec: p >= 1 required");
  if (spec.space == SpaceKind::Modulation && !(spec.r >= 1.0))
    throw config_error("norm spec: r >= 1 required");
}

// Classical H^s norm, spectral: sqrt(L * sum (1+xi^2)^s |spectrum|^2).
inline double hs_norm(const Field& f, double s) {
  Field g = f;
  ensure_spectrum(g);
  double total = 0.0;
  for (std::size_t m = 0; m < g.grid.N; ++m) {
    const double xi = g.grid.freq(m);
    total += std::pow(1.0 + xi * xi, s) * std::norm(g.spectrum[m]);
  }
  return std::sqrt(g.grid.L * total);
}

namespace detail {

inline double ell_p(const std::vector<double>& terms, double p) {
  if (p == inf) {
    double worst = 0.0;
    for (double t : terms) worst = std::max(worst, t);
    return worst;
  }
  double total = 0.0;
  for (double t : terms) total += std::pow(t, p);
  return std::pow(total, 1.0 / p);
}

double modulation_norm(const Field& f, const NormSpec& spec);

inline double sobolev_lp_norm(const Field& f, const NormSpec& spec) {
  Field g = f;
  ensure_spectrum(g);
  Field weighted;
  weighted.grid = g.grid;
  weighted.spectrum.resize(g.grid.N);
  for (std::size_t m = 0; m < g.grid.N; ++m)
    weighted.spectrum[m] = bessel_weight(g.grid.freq(m), spec.s) * g.spectrum[m];
  weighted.spectrum_valid = true;
  return lp_norm(weighted, spec.p);
}

inline double fourier_lebesgue_norm(const Field& f, const NormSpec& spec) {
  Field g = f;
  ensure_spectrum(g);
  if (spec.p == inf) {
    double worst = 0.0;
    for (std::size_t m = 0; m < g.grid.N; ++m)
      worst = std::max(worst,
                       std::pow(bracket(g.grid.freq(m)), spec.s) * std::abs(g.spectrum[m]));
    return worst;
  }
  double total = 0.0;
  for (std::size_t m = 0; m < g.grid.N; ++m)
    total += std::pow(std::pow(bracket(g.grid.freq(m)), spec.s) * std::abs(g.spectrum[m]), spec.p);
  return std::pow(g.grid.dxi() * total, 1.0 / spec.p);
}

}  // namespace detail

inline double space_norm(const Field& f, const NormSpec& spec) {
  validate_norm_spec(spec);
  switch (spec.space) {
    case SpaceKind::Modulation: return detail::modulation_norm(f, spec);
    case SpaceKind::SobolevLp: return detail::sobolev_lp_norm(f, spec);
    case SpaceKind::FourierLebesgue: return detail::fourier_lebesgue_norm(f, spec);
  }
  throw config_error("space_norm: unknown space kind");
}

// Precomputed band support for repeated M^{s,p} (r = 2) evaluations on one
// grid: each band keeps its window-squared weights over the slots it meets,
// so a norm evaluation is one sweep over the supports with no transcendental
// calls. Agrees with space_norm's modulation path by construction.
class ModulationTable {
 public:
  ModulationTable(const Grid& g, double s, double p,
                  WindowKind window = WindowKind::raised_cosine)
      : grid_(g), p_(p) {
    const long nmax = band_limit_index(g);
    for (long n = -nmax; n <= nmax; ++n) {
      Band band;
      band.weight = std::pow(bracket(static_cast<double>(n)), s);
      for (std::size_t m = 0; m < g.N; ++m) {
        const double w = window_sigma(g.freq(m) - static_cast<double>(n), window);
        if (w != 0.0) band.support.push_back({m, w * w});
      }
      bands_.push_back(std::move(band));
    }
  }

  double norm(const std::vector<complex>& spectrum) const {
    if (p_ == inf) {
      double worst = 0.0;
      for (const auto& band : bands_) worst = std::max(worst, band.weight * piece(band, spectrum));
      return worst;
    }
    double total = 0.0;
    for (const auto& band : bands_)
      total += std::pow(band.weight * piece(band, spectrum), p_);
    return std::pow(total, 1.0 / p_);
  }

  double norm(const Field& f) const {
    Field g = f;
    ensure_spectrum(g);
    if (!(g.grid == grid_)) throw shape_error("ModulationTable: field grid mismatch");
    return norm(g.spectrum);
  }

 private:
  struct Entry {
    std::size_t slot;
    double w2;
  };
  struct Band {
    double weight = 0.0;
    std::vector<Entry> support;
  };

  double piece(const Band& band, const std::vector<complex>& spectrum) const {
    double total = 0.0;
    for (const auto& e : band.support) total += e.w2 * std::norm(spectrum[e.slot]);
    return std::sqrt(grid_.L * total);
  }

  Grid grid_;
  double p_;
  std::vector<Band> bands_;
};

inline double detail::modulation_norm(const Field& f, const NormSpec& spec) {
  Field g = f;
  ensure_spectrum(g);
  if (spec.r == 2.0) return ModulationTable(g.grid, spec.s, spec.p, spec.window).norm(g.spectrum);
  const long nmax = band_limit_index(g.grid);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * nmax + 1));
  for (long n = -nmax; n <= nmax; ++n)
    terms.push_back(std::pow(bracket(static_cast<double>(n)), spec.s) *
                    lp_norm(project_uniform(g, n, spec.window), spec.r));
  return detail::ell_p(terms, spec.p);
}

// Column label used in CSV diagnostics, e.g. "M_s=1.5_p=2".
inline std::string norm_label(const NormSpec& spec) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  switch (spec.space) {
    case SpaceKind::Modulation:
      return "M_s=" + fmt(spec.s) + "_p=" + fmt(spec.p);
    case SpaceKind::SobolevLp:
      return "Hsp_s=" + fmt(spec.s) + "_p=" + fmt(spec.p);
    case SpaceKind::FourierLebesgue:
      return "FL_s=" + fmt(spec.s) + "_p=" + fmt(spec.p);
  }
  return "norm";
}

}  // namespace kdvbbm

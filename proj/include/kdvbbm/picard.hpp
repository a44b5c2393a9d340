#pragma once

#include <cmath>
#include <vector>

#include "kdvbbm/nonlinearity.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/semigroup.hpp"

namespace kdvbbm {

// Time horizon on which the Duhamel map is a guaranteed contraction for a
// datum of size norm0: T = 1/(8*Cs*norm0*(1+norm0)), where Cs bounds the
// nonlinear estimates in the working norm. The zero datum imposes no limit.
inline double existence_time(double norm0, double Cs = 1.0) {
  if (norm0 < 0.0) throw config_error("existence_time: norm0 must be nonnegative");
  if (!(Cs > 0.0)) throw config_error("existence_time: Cs must be positive");
  if (norm0 == 0.0) return inf;
  return 1.0 / (8.0 * Cs * norm0 * (1.0 + norm0));
}

// One application of the Duhamel map to a discrete path: given spectra
// path[j] at the uniform nodes t_j = j*h covering [0, T], returns the spectra
//
//   Psi[j] = S(t_j) * (eta0_hat - i * I_j),   I_j = integral_0^{t_j} g,
//   g(t_j) = S(-t_j) * Fhat(path[j]),
//
// with the running integral I_j accumulated mode by mode: composite Simpson
// up to the nearest even node, a 3/8 closing rule for odd nodes past the
// first, and a cubic four-point rule for the very first interval.
inline std::vector<std::vector<complex>> picard_map(
    const Grid& g, const ModelParams& p, const std::vector<complex>& eta0_hat,
    const std::vector<std::vector<complex>>& path, double T, bool dealias = true) {
  const std::size_t J = path.empty() ? 0 : path.size() - 1;
  if (J < 3) throw config_error("picard_map: need at least 4 time nodes");
  if (!(T > 0.0)) throw config_error("picard_map: T must be positive");
  if (eta0_hat.size() != g.N) throw shape_error("picard_map: eta0 size mismatch");
  for (const auto& state : path)
    if (state.size() != g.N) throw shape_error("picard_map: path state size mismatch");

  const double h = T / static_cast<double>(J);
  const std::size_t N = g.N;

  std::vector<double> phase(N);
  for (std::size_t m = 0; m < N; ++m) phase[m] = symbol_eval(SymbolKind::phi, g.freq(m), p);

  // Twisted integrand g_j = S(-t_j) Fhat(path[j]).
  NonlinearityOp nl(g, p, dealias);
  std::vector<std::vector<complex>> tw(J + 1, std::vector<complex>(N));
  std::vector<complex> fhat(N);
  for (std::size_t j = 0; j <= J; ++j) {
    nl.f_hat(path[j], fhat);
    const double t = h * static_cast<double>(j);
    for (std::size_t m = 0; m < N; ++m) tw[j][m] = std::polar(1.0, phase[m] * t) * fhat[m];
  }

  // Running integrals I_j.
  std::vector<std::vector<complex>> I(J + 1, std::vector<complex>(N, complex{0.0, 0.0}));
  for (std::size_t m = 0; m < N; ++m)
    I[1][m] = (h / 24.0) *
              (9.0 * tw[0][m] + 19.0 * tw[1][m] - 5.0 * tw[2][m] + tw[3][m]);
  for (std::size_t j = 2; j <= J; ++j) {
    if (j % 2 == 0) {
      for (std::size_t m = 0; m < N; ++m)
        I[j][m] = I[j - 2][m] + (h / 3.0) * (tw[j - 2][m] + 4.0 * tw[j - 1][m] + tw[j][m]);
    } else {
      for (std::size_t m = 0; m < N; ++m)
        I[j][m] = I[j - 3][m] + (3.0 * h / 8.0) * (tw[j - 3][m] + 3.0 * tw[j - 2][m] +
                                                   3.0 * tw[j - 1][m] + tw[j][m]);
    }
  }

  std::vector<std::vector<complex>> out(J + 1, std::vector<complex>(N));
  const complex mi{0.0, -1.0};
  for (std::size_t j = 0; j <= J; ++j) {
    const double t = h * static_cast<double>(j);
    for (std::size_t m = 0; m < N; ++m)
      out[j][m] = std::polar(1.0, -phase[m] * t) * (eta0_hat[m] + mi * I[j][m]);
  }
  return out;
}

struct PicardConfig {
  ModelParams params;
  double T = 0.1;
  std::size_t nodes = 201;  // time nodes including both endpoints
  NormSpec increment_norm = modulation_spec(1.5, 2.0);
  double tol = 1e-10;
  std::size_t max_iter = 50;
  bool dealias = true;
};

struct PicardReport {
  Grid grid{0.0, 0};
  std::vector<double> times;
  std::vector<std::vector<complex>> path;  // last iterate
  std::vector<double> increments;          // sup over nodes of the iterate difference norm
  std::vector<double> ratios;              // successive increment ratios
  std::size_t iterations = 0;
  bool converged = false;
  bool diverged = false;

  Field state_field(std::size_t i) const {
    return field_from_spectrum(grid, path.at(i));
  }
};

// Iterates the Duhamel map from the free-evolution seed until successive
// iterates stop moving. Divergence is reported, not thrown: five consecutive
// non-contracting increments end the iteration with diverged set.
inline PicardReport picard_fixed_point(const Field& eta0, const PicardConfig& cfg) {
  Field init = eta0;
  ensure_spectrum(init);
  const Grid g = init.grid;
  if (cfg.nodes < 4) throw config_error("picard_fixed_point: need at least 4 time nodes");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T))
    throw config_error("picard_fixed_point: T must be positive and finite");

  std::vector<complex> eta0_hat = init.spectrum;
  eta0_hat[g.nyquist_slot()] = complex{0.0, 0.0};

  const std::size_t J = cfg.nodes - 1;
  const double h = cfg.T / static_cast<double>(J);

  PicardReport report;
  report.grid = g;
  report.times.resize(cfg.nodes);
  for (std::size_t j = 0; j <= J; ++j) report.times[j] = h * static_cast<double>(j);

  std::vector<double> phase(g.N);
  for (std::size_t m = 0; m < g.N; ++m)
    phase[m] = symbol_eval(SymbolKind::phi, g.freq(m), cfg.params);

  report.path.assign(cfg.nodes, std::vector<complex>(g.N));
  for (std::size_t j = 0; j <= J; ++j)
    for (std::size_t m = 0; m < g.N; ++m)
      report.path[j][m] = std::polar(1.0, -phase[m] * report.times[j]) * eta0_hat[m];

  std::vector<complex> diff(g.N);
  std::size_t stalled = 0;
  for (std::size_t k = 0; k < cfg.max_iter; ++k) {
    auto next = picard_map(g, cfg.params, eta0_hat, report.path, cfg.T, cfg.dealias);
    double increment = 0.0;
    for (std::size_t j = 0; j <= J; ++j) {
      for (std::size_t m = 0; m < g.N; ++m) diff[m] = next[j][m] - report.path[j][m];
      increment = std::max(
          increment, space_norm(field_from_spectrum(g, diff), cfg.increment_norm));
    }
    report.path = std::move(next);
    report.iterations = k + 1;
    if (!report.increments.empty()) {
      const double prev = report.increments.back();
      report.ratios.push_back(prev > 0.0 ? increment / prev : 0.0);
      stalled = (report.ratios.back() >= 1.0) ? stalled + 1 : 0;
    }
    report.increments.push_back(increment);
    if (increment <= cfg.tol) {
      report.converged = true;
      break;
    }
    if (stalled >= 5) {
      report.diverged = true;
      break;
    }
  }
  return report;
}

}  // namespace kdvbbm

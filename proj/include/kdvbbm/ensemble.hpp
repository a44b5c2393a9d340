#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "kdvbbm/field.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

// Deterministic random fields for the estimate campaigns. Draws are keyed by
// (seed, draw index, frequency bits, lane), not by call order: the same draw
// index reproduces the same field no matter what was generated before, and
// because modes are keyed by their physical frequency, refining N at fixed L
// leaves the coefficients of the shared frequencies untouched. Coefficients
// are complex Gaussians under a power-law envelope:
//   fhat(k) = amplitude * (1+|xi_k|)^(-decay) * g_k,  E|g_k|^2 = 1,
// Hermitian-paired so the field is real, with a real unit Gaussian at k = 0
// and nothing at the Nyquist mode. decay = inf collapses the spectrum to a
// single Hermitian tone pair at a hashed frequency.
struct EnsembleSpec {
  double decay = 1.2;
  double amplitude = 1.0;
  double band_limit = 0.0;  // largest |xi| kept; 0 keeps the whole band
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t draw_key(std::uint64_t seed, std::uint64_t index, double xi,
                              std::uint64_t lane) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ index);
  h = splitmix(h ^ std::bit_cast<std::uint64_t>(xi));
  return splitmix(h ^ lane);
}

inline double key_uniform(std::uint64_t key) {  // in (0,1)
  return (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

inline void validate_ensemble(const EnsembleSpec& spec) {
  if (!(spec.decay > 0.0)) throw config_error("ensemble: decay must be positive");
  if (!(spec.amplitude > 0.0)) throw config_error("ensemble: amplitude must be positive");
  if (spec.band_limit < 0.0) throw config_error("ensemble: band_limit must be nonnegative");
}

inline Field random_field(const Grid& g, const EnsembleSpec& spec, std::uint64_t index) {
  validate_ensemble(spec);
  std::vector<complex> spectrum(g.N, complex{0.0, 0.0});
  const long kmax = static_cast<long>(g.N / 2) - 1;
  const double cap = spec.band_limit > 0.0 ? spec.band_limit : g.max_freq();

  if (spec.decay == inf) {
    // Single tone: hash a frequency index in the admissible band.
    long hi = kmax;
    while (hi > 1 && std::abs(g.freq_of_mode(hi)) > cap) --hi;
    const std::uint64_t pick = detail::draw_key(spec.seed, index, 0.0, 7);
    const long k = 1 + static_cast<long>(pick % static_cast<std::uint64_t>(hi));
    const double u1 = detail::key_uniform(detail::draw_key(spec.seed, index, g.freq_of_mode(k), 1));
    const double u2 = detail::key_uniform(detail::draw_key(spec.seed, index, g.freq_of_mode(k), 2));
    const double r = spec.amplitude * std::sqrt(-std::log(u1));
    const complex c = std::polar(r, 2.0 * pi * u2);
    spectrum[g.slot(k)] = c;
    spectrum[g.slot(-k)] = std::conj(c);
    return field_from_spectrum(g, std::move(spectrum));
  }

  // Mean mode: a real unit Gaussian.
  {
    const double u1 = detail::key_uniform(detail::draw_key(spec.seed, index, 0.0, 1));
    const double u2 = detail::key_uniform(detail::draw_key(spec.seed, index, 0.0, 2));
    spectrum[g.slot(0)] =
        complex{spec.amplitude * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2), 0.0};
  }
  for (long k = 1; k <= kmax; ++k) {
    const double xi = g.freq_of_mode(k);
    if (std::abs(xi) > cap) continue;
    const double u1 = detail::key_uniform(detail::draw_key(spec.seed, index, xi, 1));
    const double u2 = detail::key_uniform(detail::draw_key(spec.seed, index, xi, 2));
    const double envelope = spec.amplitude * std::pow(bracket(xi), -spec.decay);
    const complex c = std::polar(envelope * std::sqrt(-std::log(u1)), 2.0 * pi * u2);
    spectrum[g.slot(k)] = c;
    spectrum[g.slot(-k)] = std::conj(c);
  }
  return field_from_spectrum(g, std::move(spectrum));
}

// Closed-form mean of |f|_2^2 over draws: L * sum over populated modes of
// the squared envelope (each complex Gaussian contributes E|g|^2 = 1, the
// mean mode contributes E g^2 = 1).
inline double expected_l2_sq(const Grid& g, const EnsembleSpec& spec) {
  validate_ensemble(spec);
  const double a2 = spec.amplitude * spec.amplitude;
  if (spec.decay == inf) return 2.0 * g.L * a2;
  const long kmax = static_cast<long>(g.N / 2) - 1;
  const double cap = spec.band_limit > 0.0 ? spec.band_limit : g.max_freq();
  double sum = 1.0;  // the k = 0 mode
  for (long k = 1; k <= kmax; ++k) {
    const double xi = g.freq_of_mode(k);
    if (std::abs(xi) > cap) continue;
    sum += 2.0 * std::pow(bracket(xi), -2.0 * spec.decay);
  }
  return g.L * a2 * sum;
}

}  // namespace kdvbbm

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kdvbbm/nonlinearity.hpp"
#include "kdvbbm/semigroup.hpp"

namespace kdvbbm {

// Per-mode coefficients of the exponential time-differencing RK4 scheme for
// u_t = L u + N(u) with the diagonal linear symbol L(xi) = -i*phi(xi). The
// linear phases are exact; the four nonlinear weights are the standard scheme
// coefficients, evaluated by averaging over a unit circle of contour points
// around each z = dt*L(xi) so the removable singularities at z -> 0 cause no
// cancellation. L is purely imaginary, so the average runs over the full
// circle and stays complex.
struct Etdrk4Tables {
  std::vector<complex> E, E2, Q, f1, f2, f3;
};

inline Etdrk4Tables make_etdrk4_tables(const Grid& g, const ModelParams& p, double dt) {
  if (!(dt > 0.0)) throw config_error("make_etdrk4_tables: dt must be positive");
  const std::size_t N = g.N;
  Etdrk4Tables t;
  t.E.resize(N);
  t.E2.resize(N);
  t.Q.resize(N);
  t.f1.resize(N);
  t.f2.resize(N);
  t.f3.resize(N);

  constexpr int M = 32;
  for (std::size_t m = 0; m < N; ++m) {
    const complex z0 = complex{0.0, -symbol_eval(SymbolKind::phi, g.freq(m), p)} * dt;
    t.E[m] = std::exp(z0);
    t.E2[m] = std::exp(0.5 * z0);
    complex q{0, 0}, a1{0, 0}, a2{0, 0}, a3{0, 0};
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * pi * (static_cast<double>(j) + 0.5) / M;
      const complex z = z0 + std::polar(1.0, theta);
      const complex ez = std::exp(z);
      const complex z2 = z * z, z3 = z2 * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      a1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
      a2 += (2.0 + z + ez * (z - 2.0)) / z3;
      a3 += (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
    }
    const double w = dt / M;
    t.Q[m] = w * q;
    t.f1[m] = w * a1;
    t.f2[m] = w * a2;
    t.f3[m] = w * a3;
  }
  return t;
}

class Etdrk4Stepper {
 public:
  Etdrk4Stepper(const Grid& g, const ModelParams& p, double dt, bool dealias = true,
                bool linear_only = false)
      : nl_(g, p, dealias),
        dt_(dt),
        linear_only_(linear_only),
        tab_(make_etdrk4_tables(g, p, dt)) {
    const std::size_t n = g.N;
    Nv_.resize(n);
    Na_.resize(n);
    Nb_.resize(n);
    Nc_.resize(n);
    a_.resize(n);
    b_.resize(n);
    c_.resize(n);
  }

  double dt() const { return dt_; }

  // Advances the spectral state one step in place. Returns the L-infinity
  // magnitude of the state observed while evaluating the first stage, or 0
  // when the nonlinearity is switched off and no physical-space values exist.
  double step(std::vector<complex>& v) {
    const std::size_t N = v.size();
    if (linear_only_) {
      for (std::size_t m = 0; m < N; ++m) v[m] *= tab_.E[m];
      return 0.0;
    }
    nl_.rhs(v, Nv_);
    const double linf = nl_.last_linf();
    for (std::size_t m = 0; m < N; ++m) a_[m] = tab_.E2[m] * v[m] + tab_.Q[m] * Nv_[m];
    nl_.rhs(a_, Na_);
    for (std::size_t m = 0; m < N; ++m) b_[m] = tab_.E2[m] * v[m] + tab_.Q[m] * Na_[m];
    nl_.rhs(b_, Nb_);
    for (std::size_t m = 0; m < N; ++m)
      c_[m] = tab_.E2[m] * a_[m] + tab_.Q[m] * (2.0 * Nb_[m] - Nv_[m]);
    nl_.rhs(c_, Nc_);
    for (std::size_t m = 0; m < N; ++m)
      v[m] = tab_.E[m] * v[m] + tab_.f1[m] * Nv_[m] + 2.0 * tab_.f2[m] * (Na_[m] + Nb_[m]) +
             tab_.f3[m] * Nc_[m];
    return linf;
  }

 private:
  NonlinearityOp nl_;
  double dt_;
  bool linear_only_;
  Etdrk4Tables tab_;
  std::vector<complex> Nv_, Na_, Nb_, Nc_, a_, b_, c_;
};

// Single-step operation on a Field.
inline Field step_etdrk4(const Field& state, double dt, const ModelParams& p,
                         bool dealias = true) {
  Field in = state;
  ensure_spectrum(in);
  Etdrk4Stepper stepper(in.grid, p, dt, dealias);
  std::vector<complex> v = in.spectrum;
  stepper.step(v);
  return field_from_spectrum(in.grid, std::move(v));
}

}  // namespace kdvbbm

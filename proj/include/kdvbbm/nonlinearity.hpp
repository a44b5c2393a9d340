#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kdvbbm/field.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

// Evaluates the nonlinear part
//   F(u) = tau(D) u^2 - (1/8) psi(D) u^3 - (7/48) psi(D) (u_x)^2
// with the pointwise products formed on a grid of twice the resolution.
// Doubling is exactly alias-free here: for input supported in |k| <= N/2 the
// cubic convolution reaches 3N/2, and its wrap-around images on the padded
// grid land outside the retained band |k| < N/2. The instance owns its
// scratch buffers; use one instance per thread.
class NonlinearityOp {
 public:
  NonlinearityOp(const Grid& g, const ModelParams& p, bool dealias = true)
      : grid_(g), fine_(dealias ? Grid{g.L, 2 * g.N} : g) {
    tau_.resize(g.N);
    psi_.resize(g.N);
    for (std::size_t m = 0; m < g.N; ++m) {
      const double xi = g.freq(m);
      tau_[m] = symbol_eval(SymbolKind::tau, xi, p);
      psi_[m] = symbol_eval(SymbolKind::psi, xi, p);
    }
    const std::size_t NF = fine_.N;
    padded_u_.resize(NF);
    padded_ux_.resize(NF);
    u_fine_.resize(NF);
    ux_fine_.resize(NF);
    w2_.resize(NF);
    w3_.resize(NF);
    wx2_.resize(NF);
    hat2_.resize(NF);
    hat3_.resize(NF);
    hatx2_.resize(NF);
  }

  const Grid& grid() const { return grid_; }

  // F(u) in spectral form; out may alias nothing. Also records the
  // L-infinity magnitude of u seen on the fine grid (blowup monitoring).
  void f_hat(const std::vector<complex>& uhat, std::vector<complex>& out) {
    const std::size_t N = grid_.N;
    const std::size_t NF = fine_.N;

    std::fill(padded_u_.begin(), padded_u_.end(), complex{0.0, 0.0});
    std::fill(padded_ux_.begin(), padded_ux_.end(), complex{0.0, 0.0});
    for (std::size_t m = 0; m < N; ++m) {
      const long k = grid_.mode(m);
      const std::size_t slot = fine_.slot(k);
      padded_u_[slot] = uhat[m];
      // u_x with the unpaired Nyquist mode dropped, as in derivative().
      padded_ux_[slot] =
          m == grid_.nyquist_slot() ? complex{0.0, 0.0} : complex{0.0, grid_.freq(m)} * uhat[m];
    }

    detail::synthesis_into(fine_, padded_u_, u_fine_);
    detail::synthesis_into(fine_, padded_ux_, ux_fine_);

    last_linf_ = 0.0;
    for (std::size_t j = 0; j < NF; ++j) {
      const complex u = u_fine_[j];
      const complex ux = ux_fine_[j];
      last_linf_ = std::max(last_linf_, std::abs(u));
      w2_[j] = u * u;
      w3_[j] = u * u * u;
      wx2_[j] = ux * ux;
    }

    detail::analysis_into(fine_, w2_, hat2_);
    detail::analysis_into(fine_, w3_, hat3_);
    detail::analysis_into(fine_, wx2_, hatx2_);

    out.resize(N);
    for (std::size_t m = 0; m < N; ++m) {
      const std::size_t slot = fine_.slot(grid_.mode(m));
      out[m] = tau_[m] * hat2_[slot] - 0.125 * psi_[m] * hat3_[slot] -
               (7.0 / 48.0) * psi_[m] * hatx2_[slot];
    }
    // The coarse Nyquist mode has no conjugate partner; keep it empty.
    out[grid_.nyquist_slot()] = complex{0.0, 0.0};
  }

  // Right-hand side of the evolution written as u_t = L u + N(u):
  // N(u) = -i F(u), real-valued on real states.
  void rhs(const std::vector<complex>& uhat, std::vector<complex>& out) {
    f_hat(uhat, out);
    const complex minus_i{0.0, -1.0};
    for (auto& c : out) c *= minus_i;
  }

  double last_linf() const { return last_linf_; }

 private:
  Grid grid_;
  Grid fine_;
  std::vector<double> tau_, psi_;
  std::vector<complex> padded_u_, padded_ux_, u_fine_, ux_fine_;
  std::vector<complex> w2_, w3_, wx2_, hat2_, hat3_, hatx2_;
  double last_linf_ = 0.0;
};

namespace detail {

// Pointwise product of band-limited fields on a doubled grid, restricted back
// to the original band. Quadratic and cubic convolution images wrap, if at
// all, outside the retained band, so the result is the exact truncated
// product.
template <class Op>
Field padded_pointwise(const Grid& g, std::vector<const std::vector<complex>*> spectra, Op&& op) {
  const Grid fine{g.L, 2 * g.N};
  std::vector<std::vector<complex>> fine_samples;
  fine_samples.reserve(spectra.size());
  std::vector<complex> padded(fine.N);
  for (const auto* spec : spectra) {
    std::fill(padded.begin(), padded.end(), complex{0.0, 0.0});
    for (std::size_t m = 0; m < g.N; ++m) padded[fine.slot(g.mode(m))] = (*spec)[m];
    fine_samples.emplace_back();
    synthesis_into(fine, padded, fine_samples.back());
  }
  std::vector<complex> product(fine.N);
  for (std::size_t j = 0; j < fine.N; ++j) product[j] = op(fine_samples, j);
  std::vector<complex> fine_hat;
  analysis_into(fine, product, fine_hat);
  std::vector<complex> out(g.N);
  for (std::size_t m = 0; m < g.N; ++m) out[m] = fine_hat[fine.slot(g.mode(m))];
  out[g.nyquist_slot()] = complex{0.0, 0.0};
  return field_from_spectrum(g, std::move(out));
}

}  // namespace detail

// Alias-free pointwise product a*b on the common grid.
inline Field dealiased_product(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw shape_error("dealiased_product: fields live on different grids");
  Field aa = a, bb = b;
  ensure_spectrum(aa);
  ensure_spectrum(bb);
  return detail::padded_pointwise(
      a.grid, {&aa.spectrum, &bb.spectrum},
      [](const std::vector<std::vector<complex>>& s, std::size_t j) { return s[0][j] * s[1][j]; });
}

// Alias-free triple product a*b*c, formed in one pass so no intermediate
// truncation loses high-high-low interactions.
inline Field dealiased_triple(const Field& a, const Field& b, const Field& c) {
  if (!(a.grid == b.grid) || !(a.grid == c.grid))
    throw shape_error("dealiased_triple: fields live on different grids");
  Field aa = a, bb = b, cc = c;
  ensure_spectrum(aa);
  ensure_spectrum(bb);
  ensure_spectrum(cc);
  return detail::padded_pointwise(a.grid, {&aa.spectrum, &bb.spectrum, &cc.spectrum},
                                  [](const std::vector<std::vector<complex>>& s, std::size_t j) {
                                    return s[0][j] * s[1][j] * s[2][j];
                                  });
}

// Single-shot form of the operator above.
inline Field nonlinearity(const Field& u, const ModelParams& p, bool dealias = true) {
  Field in = u;
  ensure_spectrum(in);
  NonlinearityOp op(in.grid, p, dealias);
  Field out;
  out.grid = in.grid;
  op.f_hat(in.spectrum, out.spectrum);
  out.spectrum_valid = true;
  return out;
}

}  // namespace kdvbbm

#pragma once

#include <cmath>
#include <string>

#include "kdvbbm/errors.hpp"
#include "kdvbbm/multiplier.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

// The five scalar symbols of the model. varphi is the BBM-type denominator
// polynomial; phi is the dispersion relation of the linear flow; psi and tau
// carry the nonlinear terms; omega is the comparison weight |xi|/(1+xi^2).
enum class SymbolKind { varphi, phi, psi, tau, omega };

inline const char* symbol_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::varphi: return "varphi";
    case SymbolKind::phi: return "phi";
    case SymbolKind::psi: return "psi";
    case SymbolKind::tau: return "tau";
    case SymbolKind::omega: return "omega";
  }
  return "?";
}

namespace detail {

inline double varphi_value(double xi, const ModelParams& p) {
  const double xi2 = xi * xi;
  return 1.0 + p.gamma1 * xi2 + p.delta1 * xi2 * xi2;
}

inline double checked_varphi(double xi, const ModelParams& p, const char* who) {
  const double d = varphi_value(xi, p);
  if (d == 0.0 || !std::isfinite(d))
    throw symbol_error(std::string(who) + ": varphi vanishes at xi = " + std::to_string(xi));
  return d;
}

}  // namespace detail

inline double symbol_eval(SymbolKind kind, double xi, const ModelParams& p) {
  const double xi2 = xi * xi;
  switch (kind) {
    case SymbolKind::varphi:
      return detail::varphi_value(xi, p);
    case SymbolKind::phi:
      return xi * (1.0 - p.gamma2 * xi2 + p.delta2 * xi2 * xi2) /
             detail::checked_varphi(xi, p, "phi");
    case SymbolKind::psi:
      return xi / detail::checked_varphi(xi, p, "psi");
    case SymbolKind::tau:
      return (3.0 * xi - 4.0 * p.gamma * xi2 * xi) / (4.0 * detail::checked_varphi(xi, p, "tau"));
    case SymbolKind::omega:
      return std::abs(xi) / (1.0 + xi2);
  }
  throw config_error("symbol_eval: unknown symbol kind");
}

// The two frequency weights kept deliberately distinct: the bracket
// <xi> = 1 + |xi| (band weights, Fourier-Lebesgue) and the Bessel weight
// (1+xi^2)^(1/2) (Sobolev norms).
inline double bracket(double xi) { return 1.0 + std::abs(xi); }
inline double bessel_weight(double xi, double s) { return std::pow(1.0 + xi * xi, 0.5 * s); }

// Real-valued model symbol wrapped as a MultiplierSymbol.
inline MultiplierSymbol symbol_multiplier(SymbolKind kind, const ModelParams& p) {
  return MultiplierSymbol{symbol_name(kind),
                          [kind, p](double xi) { return complex{symbol_eval(kind, xi, p), 0.0}; }};
}

}  // namespace kdvbbm

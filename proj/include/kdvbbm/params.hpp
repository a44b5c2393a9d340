#pragma once

#include <cmath>

namespace kdvbbm {

// Model coefficients (gamma1, gamma2, delta1, delta2, gamma) with the
// consistency flags of the constrained one-parameter family:
//   gamma2 = 1/6 - gamma1
//   gamma  = (5 - 18*gamma1)/24
//   delta2 = delta1 + 19/360 - gamma1/6
// The flags are recorded, never enforced: the solitary-wave regime ties
// delta2 = c*delta1 instead and deliberately leaves the family.
struct ModelParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double gamma = 0.0;

  bool consistent_gamma2 = false;
  bool consistent_gamma = false;
  bool consistent_delta = false;
  bool positive_gamma1 = false;
  bool positive_delta1 = false;

  bool fully_consistent() const { return consistent_gamma2 && consistent_gamma && consistent_delta; }
};

namespace detail {

inline constexpr double consistency_tol = 1e-14;

inline ModelParams finish_params(ModelParams p) {
  p.consistent_gamma2 = std::abs(p.gamma1 + p.gamma2 - 1.0 / 6.0) <= consistency_tol;
  p.consistent_gamma = std::abs(p.gamma - (5.0 - 18.0 * p.gamma1) / 24.0) <= consistency_tol;
  p.consistent_delta =
      std::abs((p.delta2 - p.delta1) - (19.0 / 360.0 - p.gamma1 / 6.0)) <= consistency_tol;
  p.positive_gamma1 = p.gamma1 > 0.0;
  p.positive_delta1 = p.delta1 > 0.0;
  return p;
}

}  // namespace detail

// Constrained constructor: the two free coefficients determine the rest.
inline ModelParams derive_params(double gamma1, double delta1) {
  ModelParams p;
  p.gamma1 = gamma1;
  p.gamma2 = 1.0 / 6.0 - gamma1;
  p.gamma = (5.0 - 18.0 * gamma1) / 24.0;
  p.delta1 = delta1;
  p.delta2 = delta1 + 19.0 / 360.0 - gamma1 / 6.0;
  return detail::finish_params(p);
}

// Free constructor: stores the five values verbatim; flags may come out false.
inline ModelParams free_params(double gamma1, double gamma2, double delta1, double delta2,
                               double gamma) {
  ModelParams p;
  p.gamma1 = gamma1;
  p.gamma2 = gamma2;
  p.delta1 = delta1;
  p.delta2 = delta2;
  p.gamma = gamma;
  return detail::finish_params(p);
}

// The Hamiltonian point gamma = 7/48, i.e. gamma1 = gamma2 = 1/12, where the
// energy functional is conserved.
inline ModelParams hamiltonian_params(double delta1 = 1.0) {
  return derive_params(1.0 / 12.0, delta1);
}

}  // namespace kdvbbm

#pragma once

#include <cmath>

#include "kdvbbm/grid.hpp"

namespace kdvbbm {

// Window generating the frequency-uniform partition of unity {sigma(. - n)}.
// Both choices are supported exactly on [-1,1] and satisfy
// sigma(x) + sigma(1-x) = 1, so at most two shifted copies overlap and the
// partition identity is exact up to rounding.
enum class WindowKind {
  raised_cosine,  // cos^2(pi*xi/2), the default
  smoothstep,     // 3t^2 - 2t^3 applied to t = 1 - |xi|
};

inline double window_sigma(double xi, WindowKind kind = WindowKind::raised_cosine) {
  const double a = std::abs(xi);
  if (a >= 1.0) return 0.0;
  if (kind == WindowKind::raised_cosine) {
    const double c = std::cos(0.5 * pi * xi);
    return c * c;
  }
  const double t = 1.0 - a;
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace kdvbbm

#pragma once

#include <functional>

namespace kforest::quad {

struct Integral {
  double value = 0.0;
  double abs_error = 0.0;  ///< sum of |K15 - G7| over the final panels
  int panels = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b]:
/// the panel with the largest error estimate is bisected until the summed
/// estimate is <= abs_tol or max_panels is reached.
Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int max_panels = 4000);

}  // namespace kforest::quad

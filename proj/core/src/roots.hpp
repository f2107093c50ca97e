#pragma once

// Bracketed one-dimensional solvers shared by the numeric modules.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "kforest/errors.hpp"

namespace kforest::detail {

// Bisection on an increasing function down to `width`, then a single Newton
// step that is kept only if it stays inside the final bracket.
template <class F, class DF>
double bisect_then_newton(F&& fn, DF&& dfn, double target, double lo, double hi,
                          double width = 1e-13) {
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double x = 0.5 * (lo + hi);
  const double d = dfn(x);
  if (d > 0.0 && std::isfinite(d)) {
    const double polished = x - (fn(x) - target) / d;
    if (polished >= lo && polished <= hi) return polished;
  }
  return x;
}

// Root of fn on [lo, hi] where fn(lo) and fn(hi) differ in sign.
template <class F>
double brent_root(F&& fn, double lo, double hi, double rel_tol = 1e-15,
                  const char* what = "root") {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw NoRootError(std::string(what) + ": bracket does not change sign");
  std::uintmax_t iters = 200;
  const auto tol = [rel_tol](double a, double b) {
    return std::fabs(a - b) <= rel_tol * std::fmax(std::fabs(a), std::fabs(b)) + 1e-300;
  };
  const auto r = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

// Minimizer of a unimodal function on [lo, hi].
template <class F>
std::pair<double, double> minimize(F&& fn, double lo, double hi) {
  std::uintmax_t iters = 500;
  return boost::math::tools::brent_find_minima(fn, lo, hi, std::numeric_limits<double>::digits / 2,
                                               iters);
}

}  // namespace kforest::detail

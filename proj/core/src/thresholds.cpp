#include "kforest/thresholds.hpp"

#include <cmath>
#include <string>

#include "kforest/errors.hpp"
#include "kforest/special_fn.hpp"
#include "roots.hpp"

namespace kforest::thresholds {
namespace {

using special::poisson_tail;

double poisson_pmf(int r, double lambda) {
  if (r < 0) return 0.0;
  if (lambda == 0.0) return r == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + r * std::log(lambda) - std::lgamma(r + 1.0));
}

// lambda / pi_r(lambda), the average degree that yields core parameter lambda.
double degree_of(int r, double lambda) { return lambda / poisson_tail(r, lambda); }

ThresholdResult with_fractions(int kappa, double c, double lambda) {
  ThresholdResult out;
  out.c = c;
  out.lambda = lambda;
  out.vertex_fraction = poisson_tail(kappa, lambda);
  out.edge_fraction = 0.5 * lambda * poisson_tail(kappa - 1, lambda);
  return out;
}

}  // namespace

ThresholdResult core_threshold(int kappa) {
  if (kappa < 3) throw DomainError("core_threshold: kappa must be >= 3");
  const int r = kappa - 1;
  const auto [lam0, c0] =
      detail::minimize([r](double l) { return degree_of(r, l); }, 0.1, 10.0 * kappa);
  (void)c0;
  // Stationarity of lambda / pi_r: pi_r(lambda) = lambda p_{r-1}(lambda).
  const auto stationary = [r](double l) { return poisson_tail(r, l) - l * poisson_pmf(r - 1, l); };
  double lam = lam0;
  const double lo = lam0 * 0.9;
  const double hi = lam0 * 1.1;
  if ((stationary(lo) < 0.0) != (stationary(hi) < 0.0)) {
    lam = detail::brent_root(stationary, lo, hi, 1e-15, "core_threshold");
  }
  return with_fractions(kappa, degree_of(r, lam), lam);
}

ThresholdResult tree_threshold(int k) { return core_threshold(k + 1); }

double lambda_core(int kappa, double c) {
  const ThresholdResult t = core_threshold(kappa);
  const int r = kappa - 1;
  if (c < t.c) {
    if (t.c - c <= 1e-12 * t.c) return t.lambda;
    throw NoRootError("lambda_core: c = " + std::to_string(c) + " is below the kappa-core threshold " +
                      std::to_string(t.c));
  }
  if (c == t.c) return t.lambda;
  // lambda <= c because pi_r <= 1, and degree_of(r, c) >= c.
  return detail::brent_root([r, c](double l) { return degree_of(r, l) - c; }, t.lambda, c, 1e-15,
                            "lambda_core");
}

ThresholdResult density_threshold_prime(int k) {
  if (k < 2) throw DomainError("density_threshold_prime: k must be >= 2");
  // lambda f_k / f_{k+1} = 2k; the ratio lies in [lambda, lambda + k + 1].
  const double target = 2.0 * k;
  const auto ratio = [k](double l) { return special::tail_ratio(k + 1, l); };
  const double lo = std::fmax(0.0, target - (k + 1));
  const double lam = detail::bisect_then_newton(
      ratio,
      [&ratio](double l) {
        const double h = 1e-6 * std::fmax(1.0, l);
        return (ratio(l + h) - ratio(l - h)) / (2.0 * h);
      },
      target, lo, target);
  return with_fractions(k + 1, degree_of(k, lam), lam);
}

CoreFractions core_fractions(int kappa, double c) {
  const double lam = lambda_core(kappa, c);
  const ThresholdResult t = with_fractions(kappa, c, lam);
  return {t.vertex_fraction, t.edge_fraction};
}

}  // namespace kforest::thresholds

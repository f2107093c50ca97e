#include "kforest/mu_constants.hpp"

#include <cmath>
#include <limits>

#include "kforest/errors.hpp"
#include "kforest/quadrature.hpp"
#include "kforest/special_fn.hpp"
#include "kforest/thresholds.hpp"
#include "roots.hpp"

namespace kforest::mu {

using special::poisson_head;
using special::poisson_tail;

double expected_Zk(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 1) throw DomainError("expected_Zk: need n >= 2 and k >= 1");
  if (n > (std::int64_t{1} << 30)) throw DomainError("expected_Zk: n too large for exact arithmetic");
  const std::int64_t pairs = n * (n - 1) / 2;
  const std::int64_t K = k * (n - 1);
  if (K > pairs) throw InfeasibleError("expected_Zk: k(n-1) exceeds the number of edges of K_n");
  const std::int64_t num = K * (K + 1);
  const std::int64_t den = n * (n - 1) + 2;
  const std::int64_t q = num / den;
  const std::int64_t rem = num % den;
  return static_cast<double>(q) + static_cast<double>(rem) / static_cast<double>(den);
}

XOfLambda x_of_lambda(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("x_of_lambda: lambda must be > 0");
  const double p2 = poisson_tail(2, lambda);
  const double spike = lambda * lambda * std::exp(-lambda);
  return {lambda / p2, (1.0 - spike / p2) / p2};
}

double mu2_weight(double lambda) {
  const double q2 = poisson_head(2, lambda);
  const double q3 = poisson_head(3, lambda);
  return 2.0 * q3 - 0.5 * lambda * q2 * (2.0 - q2) / (1.0 - q2);
}

double mu2_integrand(double lambda) { return mu2_weight(lambda) * x_of_lambda(lambda).dx_dlambda; }

double tail_bound(double cutoff) {
  if (!(cutoff >= 0.0)) throw DomainError("tail_bound: cutoff must be >= 0");
  const double L = cutoff;
  return std::exp(-L) * (((L + 3.0) * L + 6.0) * L + 6.0);
}

QuadratureResult mu2(double tolerance, double extra_cutoff) {
  if (!(tolerance >= 1e-10)) throw PrecisionError("mu2: tolerance below 1e-10 is not attainable in double");
  const thresholds::ThresholdResult dens = thresholds::density_threshold_prime(2);
  const double cprime = dens.c;
  const double lo = dens.lambda;

  // Smallest cutoff whose majorant tail is within half the budget.
  double hi = lo + 1.0;
  while (tail_bound(hi) > 0.5 * tolerance) hi *= 2.0;
  const double cutoff =
      detail::brent_root([&](double L) { return std::log(tail_bound(L)) - std::log(0.5 * tolerance); },
                         lo, hi, 1e-12, "mu2 cutoff") +
      extra_cutoff;

  const quad::Integral integral = quad::integrate(mu2_integrand, lo, cutoff, 0.5 * tolerance);
  QuadratureResult out;
  out.value = 2.0 * cprime - 0.25 * cprime * cprime + integral.value;
  out.abs_error_estimate = std::fmax(integral.abs_error, 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.value));
  out.tail_bound = tail_bound(cutoff);
  out.cutoff = cutoff;
  if (out.abs_error_estimate > 0.5 * tolerance)
    throw PrecisionError("mu2: quadrature error estimate exceeds the requested tolerance");
  return out;
}

}  // namespace kforest::mu

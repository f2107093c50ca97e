#pragma once

// Constants of the minimum-weight k-spanning-tree problem on K_n with
// uniform edge weights: the lower bound E[Z_k] and the k = 2 limit mu_2.

#include <cstdint>

namespace kforest::mu {

/// Expected sum of the k(n-1) smallest of C(n,2) iid uniform weights:
/// K(K+1) / (n(n-1) + 2) with K = k(n-1). Throws InfeasibleError when
/// K > C(n,2).
double expected_Zk(std::int64_t n, std::int64_t k);

struct XOfLambda {
  double x = 0.0;           ///< lambda e^lambda / f_2(lambda)
  double dx_dlambda = 0.0;
};

/// Average degree whose 3-core has Poisson parameter lambda, and its
/// derivative. lambda > 0.
XOfLambda x_of_lambda(double lambda);

/// First factor of the mu_2 integrand, written in terms of
/// q_i = P(Po(lambda) < i) to avoid cancellation at large lambda.
double mu2_weight(double lambda);

/// Integrand of the lambda-form integral in mu_2 (weight times dx/dlambda).
double mu2_integrand(double lambda);

/// Integral of t^3 e^{-t} over [cutoff, inf).
double tail_bound(double cutoff);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double tail_bound = 0.0;
  double cutoff = 0.0;
};

/// mu_2 to absolute accuracy `tolerance` (>= 1e-10, else PrecisionError).
/// `extra_cutoff` shifts the upper integration limit beyond the automatic one.
QuadratureResult mu2(double tolerance, double extra_cutoff = 0.0);

}  // namespace kforest::mu

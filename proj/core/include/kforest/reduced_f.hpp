#pragma once

// The first-moment objective log f over the constraint set of the
// configuration-model argument, in its full seven-variable form and reduced
// to (sigma0, sigma1) after the inner variables are optimized out.
//
// Throughout, lambda = g_0^{-1}(4) and
//   sigma2 = 1 - sigma0 - sigma1,  Sigma = 2 sigma0 + sigma1.

#include <string>

namespace kforest::objective {

struct ConstraintPoint {
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double tau = 0.0;
  double mu = 2.0;

  double sigma2() const noexcept { return 1.0 - sigma0 - sigma1; }
  double delta_sum() const noexcept { return delta0 + delta1 + delta2; }
  double delta3() const noexcept { return 2.0 * mu - 4.0 - delta_sum() + 4.0 * sigma0 + 2.0 * sigma1; }
  double nu() const noexcept { return 1.0 + tau; }
};

/// Empty string if w lies in the constraint set (with 1e-12 slack), else a
/// description of the first violated inequality.
std::string constraint_violation(const ConstraintPoint& w);

/// Root of tau log(1 + 1/tau) = 2 - Sigma. Returns 0 when Sigma = 2; throws
/// NoRootError when Sigma <= 1 (no finite maximizer).
double solve_tau(double sigma0, double sigma1);

/// Root lbar >= 0 of sigma0 g_0 + sigma1 g_1 + sigma2 g_2 = 4 sigma0 + 2 sigma1.
/// Throws DomainError when Sigma < 1 or sigma0 + sigma1 > 1.
double solve_lambda_bar(double sigma0, double sigma1);

/// sigma0 g_0(x) + sigma1 g_1(x) + sigma2 g_2(x).
double mixed_g(double sigma0, double sigma1, double x);

/// Unique x >= 0 with mixed_g(sigma0, sigma1, x) = target.
double mixed_g_inverse(double sigma0, double sigma1, double target);

/// The point where the inner variables take their optimal values:
/// delta_i = g_i(lbar) sigma_i, tau = solve_tau, mu = 2(1 + tau).
ConstraintPoint optimal_point(double sigma0, double sigma1);

/// log f(w) for w in the constraint set; may be -inf on degenerate faces.
/// Throws DomainError naming the violated inequality otherwise.
double log_f_full(const ConstraintPoint& w);

/// log f(sigma0, sigma1) with tau and lbar at their optimal values.
/// Requires Sigma > 1 (use log_f_E0 on Sigma = 1) and sigma0 + sigma1 <= 1;
/// (1, 0) gives its limit 0.
double log_f_reduced(double sigma0, double sigma1);

/// Same, with the inner roots supplied (lets callers perturb them).
double log_f_reduced_at(double sigma0, double sigma1, double tau, double lbar);

/// Closed form of log f on the face Sigma = 1 (tau -> infinity), sigma0 in
/// [0, 1/2].
double log_f_E0(double sigma0);

/// Partial derivatives of log_f_reduced (inner optimality makes the tau and
/// lbar terms drop out). The mixed forms stay finite where a single partial
/// has a log 0.
struct Partials {
  double d0 = 0.0;                ///< d/d sigma0
  double d1 = 0.0;                ///< d/d sigma1
  double d0_minus_d1 = 0.0;       ///< derivative along sigma0 + sigma1 = const
  double d0_minus_2d1 = 0.0;
};
Partials reduced_partials(double sigma0, double sigma1);

}  // namespace kforest::objective

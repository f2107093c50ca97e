#pragma once

// Truncated exponential series and the ratio functions built on them.
//
//   f_i(x) = sum_{j >= i} x^j / j!
//   g_i(x) = x f_{2-i}(x) / f_{3-i}(x),  g_i(0) = 3 - i      (i = 0, 1, 2)
//   pi_r(x) = P(Po(x) >= r) = e^{-x} f_r(x)
//
// Every function here is pure and thread-safe.

namespace kforest::special {

/// f_i(x) for any i >= 0 and x >= 0. Throws DomainError for x < 0 or i < 0.
double f_tail(int i, double x);

/// log f_i(x); finite for x > 0 even where f_i(x) overflows. Returns -inf at
/// x = 0 for i >= 1.
double log_f_tail(int i, double x);

/// log(f_i(x) / x^i), continuous at x = 0 where it equals -log(i!).
double log_f_tail_over_power(int i, double x);

/// P(Po(lambda) >= r).
double poisson_tail(int r, double lambda);

/// P(Po(lambda) < r) = 1 - poisson_tail(r, lambda), computed without
/// cancellation when the tail is close to one.
double poisson_head(int r, double lambda);

/// x f_{m-1}(x) / f_m(x) for m >= 1; equals m at x = 0. g_i is the m = 3 - i
/// case.
double tail_ratio(int m, double x);

/// g_i(x), i in {0, 1, 2}.
double g(int i, double x);

/// g_i'(x); equals 1/(4-i) at x = 0.
double g_prime(int i, double x);

/// Unique x >= 0 with g_i(x) = y. Throws DomainError if y < 3 - i.
double g_inverse(int i, double y);

/// lambda = g_0^{-1}(4) ~ 2.688, the Poisson parameter of a 3-core with
/// average degree 4. Recomputed on every call.
double lambda_star();

}  // namespace kforest::special

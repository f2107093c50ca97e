#include "kforest/special_fn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kforest/errors.hpp"
#include "roots.hpp"

namespace kforest::special {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_x(double x, const char* fn) {
  if (!(x >= 0.0)) throw DomainError(std::string(fn) + ": argument must be >= 0");
}

void check_index(int i, int hi, const char* fn) {
  if (i < 0 || i > hi)
    throw DomainError(std::string(fn) + ": index " + std::to_string(i) + " out of range");
}

bool use_series(int i, double x) { return x < std::fmax(1.0, static_cast<double>(i)); }

// S_m(x) = m! f_m(x) / x^m = sum_j x^j m! / (m+j)!, summed forward.
double scaled_series(int m, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 2000; ++j) {
    term *= x / (m + j);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// d/dx S_m(x) by the same series.
double scaled_series_prime(int m, double x) {
  double term = 1.0 / (m + 1);  // x^{j-1} m!/(m+j)! at j = 1
  double sum = term;
  for (int j = 2; j < 2000; ++j) {
    term *= x / (m + j);
    const double add = j * term;
    sum += add;
    if (add < 1e-17 * sum) break;
  }
  return sum;
}

// sum_{j<r} e^{-x} x^j / j!
double head_sum(int r, double x) {
  if (r <= 0) return 0.0;
  if (x == 0.0) return 1.0;
  const double lx = std::log(x);
  double s = 0.0;
  for (int j = 0; j < r; ++j) s += std::exp(-x + j * lx - std::lgamma(j + 1.0));
  return s;
}

double log_scaled(int m, double x) {
  if (use_series(m, x)) return std::log(scaled_series(m, x));
  return log_f_tail(m, x) - m * std::log(x) + std::lgamma(m + 1.0);
}

}  // namespace

double f_tail(int i, double x) {
  check_x(x, "f_tail");
  if (i < 0) throw DomainError("f_tail: index must be >= 0");
  if (x == 0.0) return i == 0 ? 1.0 : 0.0;
  if (use_series(i, x)) {
    return std::exp(i * std::log(x) - std::lgamma(i + 1.0)) * scaled_series(i, x);
  }
  double partial = 0.0;
  double term = 1.0;
  for (int j = 0; j < i; ++j) {
    partial += term;
    term *= x / (j + 1);
  }
  return std::exp(x) - partial;
}

double log_f_tail(int i, double x) {
  check_x(x, "log_f_tail");
  if (i < 0) throw DomainError("log_f_tail: index must be >= 0");
  if (x == 0.0) return i == 0 ? 0.0 : -kInf;
  if (use_series(i, x)) {
    return i * std::log(x) - std::lgamma(i + 1.0) + std::log(scaled_series(i, x));
  }
  return x + std::log1p(-head_sum(i, x));
}

double log_f_tail_over_power(int i, double x) {
  check_x(x, "log_f_tail_over_power");
  if (i < 0) throw DomainError("log_f_tail_over_power: index must be >= 0");
  return log_scaled(i, x) - std::lgamma(i + 1.0);
}

double poisson_tail(int r, double lambda) {
  check_x(lambda, "poisson_tail");
  if (r <= 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  if (use_series(r, lambda)) return std::exp(-lambda + log_f_tail(r, lambda));
  return 1.0 - head_sum(r, lambda);
}

double poisson_head(int r, double lambda) {
  check_x(lambda, "poisson_head");
  if (r <= 0) return 0.0;
  if (lambda == 0.0) return 1.0;
  if (use_series(r, lambda)) return 1.0 - poisson_tail(r, lambda);
  return head_sum(r, lambda);
}

double tail_ratio(int m, double x) {
  check_x(x, "tail_ratio");
  if (m < 1) throw DomainError("tail_ratio: index must be >= 1");
  if (x == 0.0) return m;
  const double ls = log_scaled(m, x);
  if (ls > 700.0) return x;
  return x + m * std::exp(-ls);
}

double g(int i, double x) {
  check_index(i, 2, "g");
  return tail_ratio(3 - i, x);
}

double g_prime(int i, double x) {
  check_index(i, 2, "g_prime");
  check_x(x, "g_prime");
  const int m = 3 - i;
  // g = x + m / S, so g' = 1 - m S' / S^2.
  if (x < 3.0) {
    const double s = scaled_series(m, x);
    return 1.0 - m * scaled_series_prime(m, x) / (s * s);
  }
  const double ls = log_scaled(m, x);
  if (ls > 700.0) return 1.0;
  const double inv_s = std::exp(-ls);
  // S' = S (1 - m/x) + m/x
  return 1.0 - m * inv_s * ((1.0 - m / x) + (m / x) * inv_s);
}

double g_inverse(int i, double y) {
  check_index(i, 2, "g_inverse");
  const int m = 3 - i;
  if (!(y >= m)) throw DomainError("g_inverse: no solution for y < " + std::to_string(m));
  if (y == m) return 0.0;
  // x < g_i(x) <= x + m brackets the root in [y - m, y].
  const double lo = std::fmax(0.0, y - m);
  const double hi = y;
  const double width = std::fmax(1e-13, 4.0 * std::numeric_limits<double>::epsilon() * hi);
  return detail::bisect_then_newton([i](double x) { return g(i, x); },
                                    [i](double x) { return g_prime(i, x); }, y, lo, hi, width);
}

double lambda_star() { return g_inverse(0, 4.0); }

}  // namespace kforest::special

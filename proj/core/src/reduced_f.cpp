#include "kforest/reduced_f.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kforest/errors.hpp"
#include "kforest/special_fn.hpp"
#include "roots.hpp"

namespace kforest::objective {
namespace {

constexpr double kSlack = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using special::g;
using special::log_f_tail;
using special::log_f_tail_over_power;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// c * log(x) with the convention 0 * log 0 = 0.
double coef_log(double c, double x) {
  if (c == 0.0) return 0.0;
  if (x == 0.0) return c > 0.0 ? kNegInf : std::numeric_limits<double>::infinity();
  return c * std::log(x);
}

struct Fixed {
  double lambda;
  double log_l4_over_f3;
};

const Fixed& fixed() {
  static const Fixed f = [] {
    const double l = special::lambda_star();
    return Fixed{l, 4.0 * std::log(l) - log_f_tail(3, l)};
  }();
  return f;
}

// sigma * log(f_m(x)/x^m) - (delta - m sigma) log x, the contribution of one
// degree class; handles the empty class and the x -> 0 face.
double class_term(int m, double sigma, double delta, double x) {
  if (sigma <= 0.0) return delta > kSlack ? kNegInf : 0.0;
  double excess = delta - m * sigma;
  if (excess < 0.0) excess = 0.0;
  return sigma * log_f_tail_over_power(m, x) - coef_log(excess, x);
}

// Inverse of g_m for a class with `sigma` members and degree sum `delta`.
double class_lambda(int i, double sigma, double delta) {
  if (sigma <= 0.0) return 0.0;
  const double ratio = delta / sigma;
  if (ratio <= 3.0 - i) return 0.0;
  return special::g_inverse(i, ratio);
}

}  // namespace

std::string constraint_violation(const ConstraintPoint& w) {
  std::ostringstream os;
  const double s2 = w.sigma2();
  if (w.sigma0 < -kSlack) os << "sigma0 >= 0";
  else if (w.sigma1 < -kSlack) os << "sigma1 >= 0";
  else if (s2 < -kSlack) os << "sigma0 + sigma1 <= 1";
  else if (w.tau < 0.0) os << "tau >= 0";
  else if (w.delta0 < 3.0 * w.sigma0 - kSlack) os << "delta0 >= 3 sigma0";
  else if (w.delta1 < 2.0 * w.sigma1 - kSlack) os << "delta1 >= 2 sigma1";
  else if (w.delta2 < s2 - kSlack) os << "delta2 >= 1 - sigma0 - sigma1";
  else if (w.delta_sum() > 4.0 * w.sigma0 + 2.0 * w.sigma1 + kSlack) os << "delta0 + delta1 + delta2 <= 4 sigma0 + 2 sigma1";
  else if (w.delta3() < 3.0 * w.tau - kSlack) os << "delta3 >= 3 tau";
  else if (2.0 * w.mu < 3.0 * w.nu() - kSlack) os << "2 mu >= 3 (1 + tau)";
  return os.str();
}

double solve_tau(double sigma0, double sigma1) {
  const double target = 2.0 - 2.0 * sigma0 - sigma1;
  if (target <= 0.0) return 0.0;
  if (target >= 1.0)
    throw NoRootError("solve_tau: tau log(1 + 1/tau) = 2 - 2 sigma0 - sigma1 needs 2 sigma0 + sigma1 > 1");
  const auto phi = [target](double log_tau) {
    const double t = std::exp(log_tau);
    return t * std::log1p(1.0 / t) - target;
  };
  // phi(tau) >= 1 - 1/(2 tau), so tau <= 1 / (2 (1 - target)).
  const double hi = std::log(1.0 / (1.0 - target)) + 1.0;
  const double lo = std::log(target) * 2.0 - 40.0;
  return std::exp(detail::brent_root(phi, lo, hi, 1e-15, "solve_tau"));
}

double mixed_g(double sigma0, double sigma1, double x) {
  const double s2 = 1.0 - sigma0 - sigma1;
  double v = 0.0;
  if (sigma0 != 0.0) v += sigma0 * g(0, x);
  if (sigma1 != 0.0) v += sigma1 * g(1, x);
  if (s2 != 0.0) v += s2 * g(2, x);
  return v;
}

double mixed_g_inverse(double sigma0, double sigma1, double target) {
  const double base = mixed_g(sigma0, sigma1, 0.0);
  if (target < base - 1e-14) throw DomainError("mixed_g_inverse: target below the value at 0");
  if (target <= base) return 0.0;
  // x < G(x) <= G(0) + x
  const double lo = target - base;
  const double hi = target;
  return detail::brent_root([&](double x) { return mixed_g(sigma0, sigma1, x) - target; }, lo, hi, 4e-16,
                            "mixed_g_inverse");
}

double solve_lambda_bar(double sigma0, double sigma1) {
  if (sigma0 < 0.0 || sigma1 < 0.0 || sigma0 + sigma1 > 1.0 + kSlack)
    throw DomainError("solve_lambda_bar: need sigma0, sigma1 >= 0 and sigma0 + sigma1 <= 1");
  if (2.0 * sigma0 + sigma1 < 1.0 - kSlack) throw DomainError("solve_lambda_bar: need 2 sigma0 + sigma1 >= 1");
  return mixed_g_inverse(sigma0, sigma1, 4.0 * sigma0 + 2.0 * sigma1);
}

ConstraintPoint optimal_point(double sigma0, double sigma1) {
  const double lbar = solve_lambda_bar(sigma0, sigma1);
  ConstraintPoint w;
  w.sigma0 = sigma0;
  w.sigma1 = sigma1;
  w.delta0 = g(0, lbar) * sigma0;
  w.delta1 = g(1, lbar) * sigma1;
  w.delta2 = g(2, lbar) * (1.0 - sigma0 - sigma1);
  w.tau = solve_tau(sigma0, sigma1);
  w.mu = 2.0 * (1.0 + w.tau);
  return w;
}

double log_f_full(const ConstraintPoint& w) {
  if (const std::string bad = constraint_violation(w); !bad.empty())
    throw DomainError("log_f_full: violated constraint " + bad);
  const double s0 = w.sigma0;
  const double s1 = w.sigma1;
  const double s2 = std::fmax(0.0, w.sigma2());
  const double tau = w.tau;
  const double mu = w.mu;
  const double delta = w.delta_sum();
  const double delta3 = std::fmax(0.0, w.delta3());

  const double lam = special::g_inverse(0, std::fmax(3.0, 2.0 * mu / (1.0 + tau)));
  const double l0 = class_lambda(0, s0, w.delta0);
  const double l1 = class_lambda(1, s1, w.delta1);
  const double l2 = class_lambda(2, s2, w.delta2);

  double v = xlogx(tau + 1.0) - xlogx(s0) - xlogx(s1) - xlogx(s2) - xlogx(tau);
  v += 2.0 * mu * std::log(lam) - (tau + 1.0) * log_f_tail(3, lam);
  v += class_term(3, s0, w.delta0, l0);
  v += class_term(2, s1, w.delta1, l1);
  v += class_term(1, s2, w.delta2, l2);
  if (tau > 0.0) {
    const double l3 = class_lambda(0, tau, delta3);
    v += class_term(3, tau, delta3, l3);
  } else if (delta3 > kSlack) {
    return kNegInf;
  }
  const double open = 2.0 - 2.0 * s0 - s1;
  if (open > 0.0) v += tau > 0.0 ? open * (1.0 + std::log(tau)) : kNegInf;
  v -= s2 * std::log(2.0);
  v += 0.5 * xlogx(delta) + 0.5 * xlogx(delta3) - mu * std::log(2.0 * mu);
  return v;
}

double log_f_reduced_at(double sigma0, double sigma1, double tau, double lbar) {
  const double s2 = std::fmax(0.0, 1.0 - sigma0 - sigma1);
  const double sig = 2.0 * sigma0 + sigma1;
  const double open = 2.0 - sig;
  double v = xlogx(tau + 1.0) - xlogx(sigma0) - xlogx(sigma1) - xlogx(s2) - xlogx(tau);
  v += fixed().log_l4_over_f3;
  if (sigma0 > 0.0) v += sigma0 * log_f_tail_over_power(3, lbar);
  if (sigma1 > 0.0) v += sigma1 * log_f_tail_over_power(2, lbar);
  if (s2 > 0.0) v += s2 * log_f_tail_over_power(1, lbar);
  v -= coef_log(sig - 1.0, lbar);
  if (open > 0.0) v += coef_log(open, tau) + open;
  v -= s2 * std::log(2.0);
  v += sig * std::log(2.0 * sig);
  v += 0.5 * xlogx(4.0 * tau);  // 2 tau log(4 tau)
  v -= (2.0 + 2.0 * tau) * std::log(4.0 + 4.0 * tau);
  return v;
}

double log_f_reduced(double sigma0, double sigma1) {
  if (sigma0 < 0.0 || sigma1 < 0.0 || sigma0 + sigma1 > 1.0 + kSlack)
    throw DomainError("log_f_reduced: need sigma0, sigma1 >= 0 and sigma0 + sigma1 <= 1");
  if (2.0 * sigma0 + sigma1 <= 1.0)
    throw DomainError("log_f_reduced: 2 sigma0 + sigma1 must exceed 1 (the face = 1 is log_f_E0)");
  return log_f_reduced_at(sigma0, sigma1, solve_tau(sigma0, sigma1), solve_lambda_bar(sigma0, sigma1));
}

double log_f_E0(double sigma0) {
  if (!(sigma0 >= 0.0 && sigma0 <= 0.5)) throw DomainError("log_f_E0: sigma0 must lie in [0, 1/2]");
  return fixed().log_l4_over_f3 - std::log(16.0) - 2.0 * xlogx(sigma0) - xlogx(1.0 - 2.0 * sigma0) -
         sigma0 * std::log(3.0);
}

Partials reduced_partials(double sigma0, double sigma1) {
  const double tau = solve_tau(sigma0, sigma1);
  const double lbar = solve_lambda_bar(sigma0, sigma1);
  const double s2 = 1.0 - sigma0 - sigma1;
  const double lt = std::log(tau);
  const double ll = std::log(lbar);
  const double q1 = log_f_tail_over_power(1, lbar);  // log(f_1 / x)
  const double q2 = log_f_tail_over_power(2, lbar);
  const double q3 = log_f_tail_over_power(3, lbar);
  const double lsig = std::log(4.0 * sigma0 + 2.0 * sigma1);
  Partials p;
  // log(f3 / (x^4 f1)) = q3 - q1 - 2 log x, log(f2 / (x^2 f1)) = q2 - q1 - log x
  p.d0 = std::log(s2 / sigma0) + (q3 - q1 - 2.0 * ll) - 2.0 * lt + std::log(2.0) + 2.0 * lsig;
  p.d1 = std::log(s2 / sigma1) + (q2 - q1 - ll) - lt + std::log(2.0) + lsig;
  // log(f3 / (x^2 f2)) = q3 - q2 - log x
  p.d0_minus_d1 = std::log(sigma1 / sigma0) + (q3 - q2 - ll) - lt + lsig;
  // log(f1 f3 / f2^2) = q1 + q3 - 2 q2
  p.d0_minus_2d1 = std::log(sigma1 * sigma1 / (sigma0 * s2)) + (q1 + q3 - 2.0 * q2) - std::log(2.0);
  return p;
}

}  // namespace kforest::objective

#include "kforest/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace kforest::quad {
namespace {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = Kronrod::abscissa();  // 0 first, Gauss nodes at even positions
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = wk[0] * f0;
  double g7 = wg[0] * f0;
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double pair = f(mid + half * xk[j]) + f(mid - half * xk[j]);
    k15 += wk[j] * pair;
    if (j % 2 == 0) g7 += wg[j / 2] * pair;
  }
  return {a, b, half * k15, std::fabs(half * (k15 - g7))};
}

}  // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int max_panels) {
  std::priority_queue<Panel> heap;
  Panel first = evaluate(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int panels = 1;
  while (err > abs_tol && panels < max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    const Panel left = evaluate(f, worst.a, mid);
    const Panel right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  Integral out;
  out.panels = panels;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.abs_error += heap.top().error;
    heap.pop();
  }
  return out;
}

}  // namespace kforest::quad

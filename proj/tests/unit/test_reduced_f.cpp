#include <gtest/gtest.h>

#include <cmath>

#include "kforest/errors.hpp"
#include "kforest/reduced_f.hpp"
#include "kforest/rng.hpp"
#include "kforest/special_fn.hpp"

namespace ob = kforest::objective;
using kforest::Rng;

namespace {

// Uniform point of {sigma0, sigma1 >= 0, sigma0 + sigma1 <= 1, Sigma > 1 + margin}.
std::pair<double, double> sample_E(Rng& rng, double margin = 1e-3) {
  for (;;) {
    const double s0 = rng.uniform(), s1 = rng.uniform();
    if (s0 + s1 <= 1.0 && 2 * s0 + s1 > 1.0 + margin && 2 * s0 + s1 < 2.0 - margin) return {s0, s1};
  }
}

}  // namespace

TEST(Objective, TauRootSatisfiesItsEquation) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const auto [s0, s1] = sample_E(rng);
    const double tau = ob::solve_tau(s0, s1);
    EXPECT_NEAR(tau * std::log1p(1.0 / tau), 2.0 - (2 * s0 + s1), 1e-11);
  }
  EXPECT_DOUBLE_EQ(ob::solve_tau(1.0, 0.0), 0.0);
  EXPECT_THROW(ob::solve_tau(0.3, 0.3), kforest::NoRootError);
}

TEST(Objective, LambdaBarSolvesMixedEquation) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto [s0, s1] = sample_E(rng);
    const double lb = ob::solve_lambda_bar(s0, s1);
    const double s2 = 1 - s0 - s1;
    const double lhs = s0 * kforest::special::g(0, lb) + s1 * kforest::special::g(1, lb) + s2 * kforest::special::g(2, lb);
    EXPECT_NEAR(lhs, 4 * s0 + 2 * s1, 1e-10);
  }
}

TEST(Objective, ReductionConsistency) {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const auto [s0, s1] = sample_E(rng);
    const auto w = ob::optimal_point(s0, s1);
    EXPECT_EQ(ob::constraint_violation(w), "");
    EXPECT_NEAR(ob::log_f_full(w), ob::log_f_reduced(s0, s1), 1e-9) << s0 << " " << s1;
  }
}

TEST(Objective, BoundaryConsistency) {
  for (double s0 = 0.02; s0 < 0.49; s0 += 0.03) {
    // walk in from the face Sigma = 1 along sigma1 fixed
    const double s1 = 1.0 - 2 * s0;
    const double inner = ob::log_f_reduced(s0 + 0.5e-4, s1);
    EXPECT_NEAR(inner, ob::log_f_E0(s0), 1e-3) << s0;
  }
}

TEST(Objective, ReducedIsOptimalInTheInnerVariables) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto [s0, s1] = sample_E(rng, 0.05);
    const double tau = ob::solve_tau(s0, s1);
    const double lb = ob::solve_lambda_bar(s0, s1);
    const double at = ob::log_f_reduced_at(s0, s1, tau, lb);
    EXPECT_NEAR(at, ob::log_f_reduced(s0, s1), 1e-12);
    // stationary in tau: first-order change is tiny
    const double h = 1e-5 * (1.0 + tau);
    const double dtau = (ob::log_f_reduced_at(s0, s1, tau + h, lb) - ob::log_f_reduced_at(s0, s1, tau - h, lb)) / (2 * h);
    EXPECT_NEAR(dtau, 0.0, 1e-5) << s0 << " " << s1;
  }
}

TEST(Objective, DecreasingInMu) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto [s0, s1] = sample_E(rng, 0.02);
    auto w = ob::optimal_point(s0, s1);
    double prev = ob::log_f_full(w);
    for (int j = 1; j <= 5; ++j) {
      w.mu += 0.05;
      const double cur = ob::log_f_full(w);
      EXPECT_LT(cur, prev) << s0 << " " << s1 << " mu " << w.mu;
      prev = cur;
    }
  }
}

TEST(Objective, IncreasingNearDeltaLowerBounds) {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto [s0, s1] = sample_E(rng, 0.05);
    const auto base = ob::optimal_point(s0, s1);
    const double lows[3] = {3 * s0, 2 * s1, 1 - s0 - s1};
    for (int i = 0; i < 3; ++i) {
      if (lows[i] < 1e-3) continue;
      auto lo = base, hi = base;
      double* dl = i == 0 ? &lo.delta0 : i == 1 ? &lo.delta1 : &lo.delta2;
      double* dh = i == 0 ? &hi.delta0 : i == 1 ? &hi.delta1 : &hi.delta2;
      *dl = lows[i] * (1 + 1e-9);
      *dh = lows[i] * (1 + 1e-6);
      EXPECT_GT(ob::log_f_full(hi), ob::log_f_full(lo)) << i << " " << s0 << " " << s1;
    }
  }
}

TEST(Objective, PartialsMatchDifferences) {
  Rng rng(7);
  const double h = 1e-6;
  for (int t = 0; t < 200; ++t) {
    const auto [s0, s1] = sample_E(rng, 0.01);
    if (s1 < 2 * h || s0 + s1 > 1 - 2 * h) continue;
    const auto p = ob::reduced_partials(s0, s1);
    const double d0 = (ob::log_f_reduced(s0 + h, s1) - ob::log_f_reduced(s0 - h, s1)) / (2 * h);
    const double d1 = (ob::log_f_reduced(s0, s1 + h) - ob::log_f_reduced(s0, s1 - h)) / (2 * h);
    EXPECT_NEAR(p.d0, d0, 1e-5 * (1 + std::abs(d0)));
    EXPECT_NEAR(p.d1, d1, 1e-5 * (1 + std::abs(d1)));
    EXPECT_NEAR(p.d0_minus_d1, p.d0 - p.d1, 1e-9 * (1 + std::abs(p.d0)));
    EXPECT_NEAR(p.d0_minus_2d1, p.d0 - 2 * p.d1, 1e-9 * (1 + std::abs(p.d0)));
  }
}

// Face closed form with lambda^4 / f_3(lambda) from mpmath; 0^0 = 1.
TEST(Objective, FaceValues) {
  const double c = 7.0533138011845430865 / 16.0;
  auto face = [c](double s) {
    const double a = s > 0 ? std::pow(s, 2 * s) : 1.0;
    const double b = s < 0.5 ? std::pow(1 - 2 * s, 1 - 2 * s) : 1.0;
    return c / (a * b * std::pow(3.0, s));
  };
  for (double s = 0.0; s <= 0.5; s += 0.0125) EXPECT_NEAR(std::exp(ob::log_f_E0(s)), face(s), 1e-12) << s;
  EXPECT_NEAR(std::exp(ob::log_f_E0(2 - std::sqrt(3.0))), face(2 - std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(ob::log_f_reduced(1.0, 0.0), 0.0, 1e-12);
}

TEST(Objective, ConstraintErrors) {
  ob::ConstraintPoint w;
  w.sigma0 = 0.8;
  w.sigma1 = 0.5;
  EXPECT_NE(ob::constraint_violation(w), "");
  EXPECT_THROW(ob::log_f_full(w), kforest::DomainError);
  EXPECT_THROW(ob::log_f_reduced(0.2, 0.5), kforest::DomainError);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kforest/errors.hpp"
#include "kforest/experiments.hpp"
#include "kforest/mu_constants.hpp"
#include "kforest/special_fn.hpp"
#include "kforest/thresholds.hpp"

namespace ex = kforest::experiments;

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  const auto a = ex::monte_carlo_mst_k(40, 2, 6, 123, 1);
  const auto b = ex::monte_carlo_mst_k(40, 2, 6, 123, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.secondary, b.secondary);
  EXPECT_EQ(a.mean, b.mean);
  const auto c = ex::monte_carlo_mst_k(40, 2, 6, 124, 1);
  EXPECT_NE(a.values, c.values);
}

TEST(MonteCarlo, SummaryStatistics) {
  const auto s = ex::monte_carlo_mst_k(30, 1, 12, 5, 1);
  ASSERT_EQ(s.values.size(), 12u);
  const double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / 12.0;
  double ss = 0.0;
  for (double v : s.values) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(s.mean, mean, 1e-12);
  EXPECT_NEAR(s.std_error, std::sqrt(ss / 11.0) / std::sqrt(12.0), 1e-12);
}

TEST(MonteCarlo, AllEdgesForcedOnFourVertices) {
  // K_4 has exactly 6 edges = 2 spanning trees, so the mean is 6 * 1/2.
  const auto s = ex::monte_carlo_mst_k(4, 2, 400, 1, 1);
  EXPECT_NEAR(s.mean, 3.0, 3 * s.std_error);
  for (std::size_t t = 0; t < s.values.size(); ++t) EXPECT_DOUBLE_EQ(s.values[t], s.secondary[t]);
}

TEST(MonteCarlo, MonotoneInKAndAboveLowerBound) {
  const auto k1 = ex::monte_carlo_mst_k(30, 1, 8, 77, 1);
  const auto k2 = ex::monte_carlo_mst_k(30, 2, 8, 77, 1);
  const auto k3 = ex::monte_carlo_mst_k(30, 3, 8, 77, 1);
  for (std::size_t t = 0; t < 8; ++t) {
    EXPECT_GT(k2.values[t], k1.values[t]);
    EXPECT_GT(k3.values[t], k2.values[t]);
    EXPECT_GE(k2.values[t], k2.secondary[t] - 1e-12);
  }
  EXPECT_GE(k2.mean, kforest::mu::expected_Zk(30, 2) - 3 * k2.std_error);
}

TEST(MonteCarlo, Preconditions) {
  EXPECT_THROW(ex::monte_carlo_mst_k(5, 3, 2, 0), kforest::InfeasibleError);
  EXPECT_THROW(ex::monte_carlo_mst_k(10, 1, 0, 0), kforest::DomainError);
}

TEST(CoreStatistics, FractionsConsistentWithDegreeIdentity) {
  const auto s = ex::empirical_core_statistics(20000, 5.0, 3, 4, 3, 1);
  const double lam = kforest::thresholds::lambda_core(3, 5.0);
  EXPECT_NEAR(s.prediction, kforest::thresholds::core_fractions(3, 5.0).vertex_fraction, 1e-12);
  EXPECT_NEAR(s.mean, s.prediction, 0.02);
  const double ev = std::accumulate(s.secondary.begin(), s.secondary.end(), 0.0) /
                    std::accumulate(s.values.begin(), s.values.end(), 0.0);
  EXPECT_NEAR(2.0 * ev, kforest::special::g(0, lam), 0.05);
}

TEST(CoreStatistics, BelowThresholdCoreIsEmpty) {
  const double c = kforest::thresholds::core_threshold(3).c - 0.2;
  const auto s = ex::empirical_core_statistics(100000, c, 3, 20, 8, 0);
  EXPECT_EQ(s.prediction, 0.0);
  EXPECT_GE(static_cast<double>(s.skipped), 0.99 * 20);
}

TEST(Orientation, RatioAtMostOne) {
  const auto s = ex::orientation_experiment(4000, 4.0, 5, 2, 1);
  for (double v : s.values) {
    EXPECT_LE(v, 1.0);
    EXPECT_GT(v, 0.9);
  }
  const auto t = ex::orientation_experiment(4000, 4.0, 5, 2, 2);
  EXPECT_EQ(s.values, t.values);
}

TEST(Orientation, EmptyCoresAreSkipped) {
  const auto s = ex::orientation_experiment(2000, 1.0, 3, 1, 1);
  EXPECT_EQ(s.skipped, 3);
  EXPECT_TRUE(s.values.empty());
}

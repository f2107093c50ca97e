#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kforest/appendix_verifier.hpp"
#include "kforest/errors.hpp"
#include "kforest/reduced_f.hpp"
#include "kforest/special_fn.hpp"

namespace vf = kforest::verify;

namespace {

double extra(const vf::GridReport& r, const std::string& key) {
  for (const auto& [k, v] : r.extras)
    if (k == key) return v;
  ADD_FAILURE() << "missing extra " << key;
  return NAN;
}

double coord(const vf::Named& p, const std::string& key) {
  for (const auto& [k, v] : p)
    if (k == key) return v;
  ADD_FAILURE() << "missing coordinate " << key;
  return NAN;
}

// Monomial expansion of the certificate polynomial (worked out by hand with
// a CAS); only the lambda^2 block depends on u.
double phi_expanded(int i, double S, double D) {
  const double u = std::array{5.5, 5.75, 5.875, 5.9375}[static_cast<std::size_t>(i - 1)];
  const double L2 = std::pow(kforest::special::lambda_star(), 2);
  const double lam_block =
      2.25 * S * S * D * D - 4.5 * S * S * D - 3 * u * S * D * D + 6 * u * S * D + u * u * D * D - 2 * u * u * D;
  const double rest = -6912 * std::pow(S, 4) + 20448 * std::pow(S, 3) * D - 13248 * std::pow(S, 3) -
                      21744 * S * S * D * D + 25632 * S * S * D - 6336 * S * S + 9792 * S * std::pow(D, 3) -
                      15264 * S * D * D + 6048 * S * D - 576 * S - 1584 * std::pow(D, 4) + 2880 * std::pow(D, 3) -
                      1584 * D * D + 864 * D - 576;
  return L2 * lam_block + rest;
}

}  // namespace

TEST(PhiCertificate, MatchesExpandedForm) {
  for (int i = 1; i <= 4; ++i) {
    const auto reg = vf::phi_region(i);
    for (double S = reg.sigma_lo; S <= reg.sigma_hi; S += 0.037)
      for (double D = S + 1; D <= std::min(2 * S, reg.delta_cap); D += 0.041) {
        const double a = vf::phi(i, S, D), b = phi_expanded(i, S, D);
        EXPECT_NEAR(a, b, 1e-9 * (1 + std::abs(b))) << i << " " << S << " " << D;
      }
  }
}

TEST(PhiCertificate, DiagonalKeepsOnlyFirstTerm) {
  const double L2 = std::pow(kforest::special::lambda_star(), 2);
  for (int i = 1; i <= 4; ++i)
    for (double S = 1.1; S < 2.0; S += 0.1) {
      const double D = S + 1;
      const double w = std::array{5.5, 5.75, 5.875, 5.9375}[static_cast<std::size_t>(i - 1)] - 1.5 * S;
      EXPECT_NEAR(vf::phi(i, S, D), L2 * D * (D - 2) * w * w, 1e-12);
      EXPECT_GE(vf::phi(i, S, D), 0.0);
    }
  EXPECT_THROW(vf::phi(5, 1.2, 2.3), kforest::DomainError);
}

TEST(PhiCertificate, VerdictFollowsRule) {
  for (const auto& r : vf::verify_phi_grids(0.01, 1)) {
    EXPECT_EQ(r.pass, r.worst_value - 12755.0 * r.spacing > 0.0) << r.region;
    EXPECT_FALSE(r.maximize);
    const double S = coord(r.worst_point, "Sigma"), D = coord(r.worst_point, "Delta");
    EXPECT_DOUBLE_EQ(vf::phi(std::stoi(r.region.substr(r.region.size() - 1)), S, D), r.worst_value);
  }
}

TEST(FaceGrid, ValuesAndVerdict) {
  const auto r = vf::verify_region_E0(1e-3);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.target, std::log(0.96), 1e-15);
  EXPECT_LT(r.worst_value, std::log(0.96));
  EXPECT_NEAR(std::exp(r.worst_value), 0.949861, 1e-4);
}

TEST(InteriorGrid, RejectsBadStep) {
  EXPECT_THROW(vf::verify_region_E1(0.02), kforest::DomainError);
  EXPECT_THROW(vf::verify_region_E1(0.0), kforest::DomainError);
}

// The grid maximum is a real value of the objective, and a 10x finer local
// grid around it never exceeds the certified bound.
TEST(InteriorGrid, SpotCheckAgainstFinerLocalGrid) {
  const double delta = 1.0 / 200.0;
  const auto r = vf::verify_region_E1(delta, {1, false, false});
  const double s0 = coord(r.worst_point, "sigma0"), s1 = coord(r.worst_point, "sigma1");
  const double at = 2 * s0 + s1 > 1.0 + 1e-12 ? kforest::objective::log_f_reduced(s0, s1) : kforest::objective::log_f_E0(s0);
  EXPECT_NEAR(at, r.worst_value, 1e-12);
  double fine_max = -INFINITY;
  const double h = delta / 10.0;
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      const double x0 = s0 + a * h, x1 = s1 + b * h;
      if (x1 < 0.01 || x1 > 0.99 || x0 + x1 > 1.0 || 2 * x0 + x1 <= 1.0) continue;
      fine_max = std::max(fine_max, kforest::objective::log_f_reduced(x0, x1));
    }
  EXPECT_LE(fine_max, r.certified_bound);
  EXPECT_NEAR(r.certified_bound, r.worst_value + 40.0 * delta, 1e-15);
  EXPECT_EQ(r.pass, r.worst_value <= -0.0105 + 1e-4 && r.certified_bound <= 0.0);
}

TEST(InteriorGrid, ThreadCountDoesNotChangeResult) {
  const auto a = vf::verify_region_E1(1.0 / 300.0, {1, false, false});
  const auto b = vf::verify_region_E1(1.0 / 300.0, {3, false, false});
  EXPECT_EQ(a.worst_value, b.worst_value);
  EXPECT_EQ(a.worst_point, b.worst_point);
  EXPECT_EQ(a.points, b.points);
}

TEST(InteriorGrid, DumpHasOneRowPerPoint) {
  const auto r = vf::verify_region_E1(1.0 / 100.0, {1, true, true});
  ASSERT_EQ(r.dump_columns.size(), 3u);
  EXPECT_EQ(static_cast<std::int64_t>(r.dump.size()), 3 * r.points);
  double mx = -INFINITY;
  for (std::size_t i = 2; i < r.dump.size(); i += 3) mx = std::max(mx, r.dump[i]);
  EXPECT_EQ(mx, r.worst_value);
}

TEST(EdgeStrips, AllChecksPassAtCoarseSettings) {
  vf::EdgeOptions eo;
  eo.delta = 1.0 / 1000.0;
  eo.samples = 400;
  eo.rows = 60;
  eo.threads = 1;
  const auto reports = vf::verify_region_E2_E3(eo);
  ASSERT_EQ(reports.size(), 7u);
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.region << ": " << r.note;
}

TEST(LambdaGap, DiagonalHasZeroUpperCurve) {
  for (double s0 : {0.3, 0.5, 0.7})
    for (double s1 : {0.05, 0.2}) {
      if (s0 + s1 > 1 || 2 * s0 + s1 <= 1.1) continue;
      const auto g = vf::evaluate_gap(s0, s1, 2 * s0 + s1 + 1);
      EXPECT_NEAR(g.l2, 0.0, 1e-12);
      ASSERT_FALSE(g.taus.empty());
      EXPECT_GT(g.l1, g.l2);
    }
}

TEST(LambdaGap, HighDeltaCase) {
  const double lam = kforest::special::lambda_star();
  const auto g = vf::evaluate_gap(0.9, 0.1, 3.7);  // Sigma = 1.9, Delta in [2.9, 3.8]
  ASSERT_FALSE(g.taus.empty());
  for (double tau : g.taus) {
    const double l3 = vf::lambda3_of(0.9, 0.1, 3.7, tau);
    EXPECT_GE(l3, lam - 1e-12);
    EXPECT_GT(g.l1, lam);
  }
  EXPECT_LE(g.l2, lam);
  for (double tau : g.taus) EXPECT_LE(tau, g.tau_bound);
  EXPECT_LE(g.l2, g.l2_bound);
}

TEST(LambdaGap, SamplerIsDeterministicAndPasses) {
  const auto a = vf::verify_L_gap(300, 9, 1);
  const auto b = vf::verify_L_gap(300, 9, 2);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.violations, 0);
  EXPECT_EQ(a.worst_value, b.worst_value);
  EXPECT_EQ(a.worst_point, b.worst_point);
}

TEST(RatioInequalities, SampleFloor) { EXPECT_THROW(vf::verify_appendix_c(999), kforest::DomainError); }

TEST(RatioInequalities, EndpointsAndReportedCounts) {
  const auto r = vf::verify_appendix_c(1000);
  for (const char* key : {"violations: g0(0) = 3", "violations: g1(0) = 2", "violations: g2(0) = 1",
                          "violations: f2^2/(f1 f3) >= 1", "violations: f2^2/(f1 f3) <= 2"})
    EXPECT_EQ(extra(r, key), 0.0) << key;
  double total = 0.0;
  for (const auto& [k, v] : r.extras)
    if (k.rfind("violations:", 0) == 0) total += v;
  EXPECT_EQ(static_cast<double>(r.violations), total);
  EXPECT_EQ(r.pass, r.violations == 0);
  // the ratio f2^2/(f1 f3) at 2.688 lies in [1, 2]
  const double x = 2.688;
  const auto& f = kforest::special::f_tail;
  const double q = f(2, x) * f(2, x) / (f(1, x) * f(3, x));
  EXPECT_GT(q, 1.0);
  EXPECT_LE(q, 2.0);
}

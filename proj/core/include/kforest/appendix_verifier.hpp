#pragma once
// Certified grid checks of the first-moment objective and of the
// inconsistency of the lambda system. Every check returns a GridReport whose
// verdict is a pure function of its numbers, so a failure is an honest
// result rather than an exception.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kforest::verify {

using Named = std::vector<std::pair<std::string, double>>;

struct GridReport {
  std::string region;
  std::string quantity;       ///< what worst_value extremizes
  bool maximize = true;       ///< worst = largest (true) or smallest value
  double spacing = 0.0;
  double worst_value = 0.0;
  Named worst_point;
  double lipschitz_budget = 0.0;  ///< summed over coordinates
  /// worst_value + budget * spacing for maximize, worst - budget * spacing
  /// otherwise.
  double certified_bound = 0.0;
  double target = 0.0;
  bool pass = false;
  std::int64_t points = 0;
  std::int64_t violations = 0;
  double seconds = 0.0;
  Named extras;
  std::string note;
  /// Per-point values (row-major, dump_columns wide) when requested.
  std::vector<std::string> dump_columns;
  std::vector<double> dump;
};

struct GridOptions {
  int threads = 0;                  ///< 0 = hardware concurrency
  bool include_upper_edge = false;  ///< add lattice points on sigma0 + sigma1 = 1
  bool keep_values = false;         ///< fill GridReport::dump
};

/// log f on the face 2 sigma0 + sigma1 = 1, sampled at `spacing`; pass iff the
/// maximum is below log 0.96.
GridReport verify_region_E0(double spacing);

/// Lattice sigma0 = 0.005 + i delta, sigma1 = 0.01 + j delta over
/// 0.01 <= sigma1 <= 0.99, plus one snapped point per row on the face
/// 2 sigma0 + sigma1 = 1. Pass iff max <= -0.0105 + 1e-4 and
/// max + 40 delta <= 0. Throws DomainError if delta > 1/100 or delta <= 0.
GridReport verify_region_E1(double delta, const GridOptions& opts = {});

struct EdgeOptions {
  double delta = 1.0 / 4000.0;  ///< grid step of the sigma1 = 0 segment
  int samples = 2000;           ///< points per one-dimensional sign check
  int rows = 400;               ///< rows of the two-dimensional scans
  int threads = 0;
};

/// The sigma1 < 0.01 and sigma1 > 0.99 strips: the sigma1 = 0 grid with
/// budget 21, the derivative sign claims along the edges, the root scans of
/// the stationarity condition and the lbar * tau >= 1e-4 bound.
std::vector<GridReport> verify_region_E2_E3(const EdgeOptions& opts = {});

/// Polynomial certificate for the lambda-system gap, i in 1..4.
double phi(int i, double Sigma, double Delta);

/// (Sigma lo, Sigma hi, Delta cap) of the region used for phi_i.
struct PhiRegion {
  double sigma_lo, sigma_hi, delta_cap;
};
PhiRegion phi_region(int i);

/// Grid of each phi region anchored at (1.1, 2.1); pass iff
/// min - 12755 * spacing > 0.
std::vector<GridReport> verify_phi_grids(double spacing, int threads = 0);

/// One evaluation of the gap L1 - L2 at a point of the lambda system.
struct GapSample {
  double sigma0 = 0.0, sigma1 = 0.0, delta = 0.0;
  std::vector<double> taus;  ///< every root of the full tau relation
  double l1 = 0.0;           ///< smallest L1 over the roots
  double l2 = 0.0;
  double tau_bound = 0.0;    ///< (1 + 3 a^2) / (Delta - 2), a = 4 s0 + 2 s1 - Delta
  double l2_bound = 0.0;     ///< 12 (Delta - Sigma - 1) / (6 - 3 s0 - 2 s1)
};

/// Roots tau > 0 of the full tau relation at (sigma0, sigma1, Delta), where
/// lambda3 = g_0^{-1}(4 + a / tau). Found by a log-spaced sign scan on
/// [1e-12, 1e6] refined with a bracketing solver.
std::vector<double> solve_tau_full(double sigma0, double sigma1, double Delta);
/// lambda3 at a root tau.
double lambda3_of(double sigma0, double sigma1, double Delta, double tau);
GapSample evaluate_gap(double sigma0, double sigma1, double Delta);

/// Uniform samples of (sigma0, sigma1) in E and Delta in [Sigma + 1, 2 Sigma];
/// pass iff L1 > L2 at every root and both analytic bounds hold.
GridReport verify_L_gap(std::int64_t samples, std::uint64_t seed, int threads = 0);

/// Inequalities between the truncated exponential ratios on a uniform grid
/// of [0, lambda] (plus convexity of g_i on [0, 6] by second differences).
/// Throws DomainError if samples < 1000.
GridReport verify_appendix_c(std::int64_t samples);

}  // namespace kforest::verify

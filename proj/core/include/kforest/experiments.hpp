#pragma once
// Monte Carlo studies: k spanning trees of randomly weighted K_n, and core
// and orientation statistics of G(n, c/n).

#include <cstdint>
#include <string>
#include <vector>

namespace kforest::experiments {

struct TrialSummary {
  std::string experiment;
  std::int64_t n = 0;
  int k = 0;               ///< trees for mst runs, core order otherwise
  double c = 0.0;          ///< average degree (0 for K_n runs)
  int trials = 0;          ///< trials attempted
  std::int64_t skipped = 0;  ///< trials without a value (empty core)
  double mean = 0.0;       ///< over values
  double std_error = 0.0;  ///< sample std / sqrt(count); 0 for one value
  std::vector<double> values;     ///< per trial, in trial order
  std::vector<double> secondary;  ///< second per-trial statistic, see below
  std::string secondary_name;
  double prediction = 0.0;  ///< limit the mean is compared with
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

/// Mean weight of k edge-disjoint spanning trees of K_n with iid uniform
/// [0, 1) weights. `secondary` holds the realized sum of the k(n-1) smallest
/// weights (a lower bound for each trial). Trial t uses stream t of `seed`.
/// Throws InfeasibleError if n < 2k, DomainError if trials < 1.
TrialSummary monte_carlo_mst_k(std::int64_t n, int k, int trials, std::uint64_t seed, int threads = 0);

/// kappa-core of G(n, c/n): `values` are core vertices / n, `secondary` core
/// edges / n. prediction = limiting vertex fraction (0 below the threshold).
/// Empty cores are kept as zeros and counted in `skipped`.
TrialSummary empirical_core_statistics(std::int64_t n, double c, int kappa, int trials, std::uint64_t seed,
                                       int threads = 0);

/// Orients the 3-core of G(n, c/n) to maximize sum_v min(2, indegree) and
/// records flow / (2 N), N = core size. Empty cores are skipped (counted).
/// `secondary` is the core size N.
TrialSummary orientation_experiment(std::int64_t n, double c, int trials, std::uint64_t seed, int threads = 0);

}  // namespace kforest::experiments

#pragma once

// Core-emergence and core-density thresholds of G(n, c/n).
//
// Indexing follows the core order: core_threshold(3) is the point where a
// 3-core appears (c ~ 3.35). The threshold relevant to k spanning trees is
// the (k+1)-core one, exposed as tree_threshold(k).

#include <utility>

namespace kforest::thresholds {

struct ThresholdResult {
  double c = 0.0;                ///< average-degree threshold
  double lambda = 0.0;           ///< Poisson parameter of the core at c
  double vertex_fraction = 0.0;  ///< core vertices per vertex of G
  double edge_fraction = 0.0;    ///< core edges per vertex of G
};

/// inf over lambda > 0 of lambda / P(Po(lambda) >= kappa - 1). kappa >= 3.
ThresholdResult core_threshold(int kappa);

/// core_threshold(k + 1).
ThresholdResult tree_threshold(int k);

/// Larger root lambda of c = lambda e^lambda / f_{kappa-1}(lambda).
/// Throws NoRootError when c is below the threshold.
double lambda_core(int kappa, double c);

/// Threshold c' at which the (k+1)-core has average degree 2k. k >= 2.
ThresholdResult density_threshold_prime(int k);

struct CoreFractions {
  double vertex_fraction = 0.0;
  double edge_fraction = 0.0;
};

/// Limiting vertex and edge counts of the kappa-core, divided by n.
CoreFractions core_fractions(int kappa, double c);

}  // namespace kforest::thresholds

#pragma once

// Random graph generation, k-core peeling and the configuration model.

#include <cstdint>
#include <vector>

#include "kforest/graph.hpp"

namespace kforest::graphs {

enum class WeightMode {
  /// Weight of an included edge is uniform on (0, p]: the law of X_e given
  /// X_e <= p when G(n,p) is read off uniformly weighted K_n.
  conditional,
  /// Independent uniform [0, 1) weight.
  plain,
};

/// G(n, p) by geometric skipping over the C(n,2) vertex pairs.
WeightedGraph sample_gnp(Vertex n, double p, std::uint64_t seed, WeightMode mode = WeightMode::conditional);

/// G(n, m): m distinct pairs uniformly at random, uniform [0, 1) weights.
WeightedGraph sample_gnm(Vertex n, std::int64_t m, std::uint64_t seed);

/// K_n with iid uniform [0, 1) weights, edges in lexicographic pair order.
/// Throws CapacityError above `max_edges` edges.
WeightedGraph sample_complete_weights(Vertex n, std::uint64_t seed, std::int64_t max_edges = 50'000'000);

struct CorePeelResult {
  std::vector<Vertex> core_vertices;  ///< ascending
  std::vector<EdgeId> core_edges;     ///< ascending ids of edges inside the core
  std::vector<Vertex> peel_order;     ///< removed vertices in removal order
};

/// kappa-core by worklist peeling, O(n + m).
CorePeelResult kcore(const WeightedGraph& g, int kappa);

/// kappa-core, removing a uniformly random low-degree vertex at each step.
/// Slower; exists to exercise order independence.
CorePeelResult kcore_random_order(const WeightedGraph& g, int kappa, std::uint64_t seed);

/// The core as a standalone graph on vertices 0..|core|-1 (relabelled in
/// ascending original order), keeping edge order and weights.
WeightedGraph core_graph(const WeightedGraph& g, const CorePeelResult& core);

struct DegreeSequence {
  std::vector<std::int64_t> degrees;
  std::int64_t total = 0;
  double lambda = 0.0;       ///< truncated-Poisson parameter used
  int exact_tries = 0;       ///< whole-sequence draws made
  bool adjusted = false;     ///< true if the total was fixed by resampling
  std::int64_t adjust_steps = 0;
};

struct DegreeSamplerOptions {
  int exact_tries = 16;              ///< whole-sequence rejection attempts
  std::int64_t max_tries = 100'000;  ///< overall cap, counting adjustment restarts
  std::int64_t adjust_steps_per_vertex = 50;
};

/// N iid degrees with P(d = j) = lambda^j / (j! f_3(lambda)), j >= 3,
/// lambda = g_0^{-1}(2M/N), conditioned on summing to 2M.
///
/// Exact conditioning is attempted by rejection for `exact_tries` draws;
/// after that the last draw is pushed to the target total by resampling
/// single degrees (a move is kept only if it brings the total closer). That
/// step is an approximation of the conditional law.
DegreeSequence sample_truncated_poisson_degrees(std::int64_t N, std::int64_t M, std::uint64_t seed,
                                                const DegreeSamplerOptions& opts = {});

/// Configuration model: uniform perfect matching of the degree points. With
/// `require_simple`, resamples until there are no loops or parallel edges
/// (up to `max_retries`, then SamplingError). Weights are 1.
WeightedGraph sample_core_multigraph(const DegreeSequence& degrees, std::uint64_t seed, bool require_simple,
                                     int max_retries = 1000);

}  // namespace kforest::graphs

#include "kforest/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "kforest/errors.hpp"
#include "kforest/graph.hpp"
#include "kforest/graph_core.hpp"
#include "kforest/matroid_union.hpp"
#include "kforest/parallel.hpp"
#include "kforest/rng.hpp"
#include "kforest/thresholds.hpp"

namespace kforest::experiments {
namespace {

using Clock = std::chrono::steady_clock;

struct Trial {
  std::optional<double> value;
  double secondary = 0.0;
};

void summarize(TrialSummary& s, const std::vector<Trial>& trials) {
  s.values.clear();
  s.secondary.clear();
  for (const auto& t : trials) {
    if (t.value) s.values.push_back(*t.value);
    s.secondary.push_back(t.secondary);
  }
  const auto m = static_cast<double>(s.values.size());
  if (s.values.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / m;
  if (s.values.size() < 2) {
    s.std_error = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / (m - 1.0)) / std::sqrt(m);
}

void check_trials(int trials) {
  if (trials < 1) throw DomainError("experiments: trials must be at least 1");
}

}  // namespace

TrialSummary monte_carlo_mst_k(std::int64_t n, int k, int trials, std::uint64_t seed, int threads) {
  check_trials(trials);
  if (k < 1) throw DomainError("monte_carlo_mst_k: k must be positive");
  if (n < 2 * static_cast<std::int64_t>(k))
    throw InfeasibleError("monte_carlo_mst_k: K_n has k disjoint spanning trees only for n >= 2k");
  const auto start = Clock::now();
  auto out = parallel_map<Trial>(trials, threads, [&](std::int64_t t) {
    const auto g = graphs::sample_complete_weights(static_cast<Vertex>(n), stream_seed(seed, t));
    Trial tr;
    tr.value = matroid::min_weight_k_spanning_trees(g, k).total_weight;
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const auto& e : g.edges()) w.push_back(e.weight);
    const auto take = static_cast<std::ptrdiff_t>(k * (n - 1));
    std::nth_element(w.begin(), w.begin() + take - 1, w.end());
    tr.secondary = std::accumulate(w.begin(), w.begin() + take, 0.0);
    return tr;
  });
  TrialSummary s;
  s.experiment = "mst_k";
  s.n = n;
  s.k = k;
  s.trials = trials;
  s.seed = seed;
  s.secondary_name = "smallest_k(n-1)_weights";
  summarize(s, out);
  s.prediction = std::numeric_limits<double>::quiet_NaN();
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

TrialSummary empirical_core_statistics(std::int64_t n, double c, int kappa, int trials, std::uint64_t seed,
                                       int threads) {
  check_trials(trials);
  if (!(c > 0.0)) throw DomainError("empirical_core_statistics: c must be positive");
  if (kappa < 2) throw DomainError("empirical_core_statistics: kappa must be at least 2");
  if (n < 2) throw DomainError("empirical_core_statistics: n must be at least 2");
  const auto start = Clock::now();
  const double p = std::min(1.0, c / static_cast<double>(n));
  auto out = parallel_map<Trial>(trials, threads, [&](std::int64_t t) {
    const auto g = graphs::sample_gnp(static_cast<Vertex>(n), p, stream_seed(seed, t), graphs::WeightMode::plain);
    const auto core = graphs::kcore(g, kappa);
    Trial tr;
    tr.value = static_cast<double>(core.core_vertices.size()) / static_cast<double>(n);
    tr.secondary = static_cast<double>(core.core_edges.size()) / static_cast<double>(n);
    return tr;
  });
  TrialSummary s;
  s.experiment = "core";
  s.n = n;
  s.k = kappa;
  s.c = c;
  s.trials = trials;
  s.seed = seed;
  s.secondary_name = "core_edges_per_vertex";
  summarize(s, out);
  s.skipped = std::count(s.values.begin(), s.values.end(), 0.0);
  try {
    s.prediction = thresholds::core_fractions(kappa, c).vertex_fraction;
  } catch (const NoRootError&) {
    s.prediction = 0.0;  // below the emergence threshold
  }
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

TrialSummary orientation_experiment(std::int64_t n, double c, int trials, std::uint64_t seed, int threads) {
  check_trials(trials);
  if (!(c > 0.0)) throw DomainError("orientation_experiment: c must be positive");
  if (n < 2) throw DomainError("orientation_experiment: n must be at least 2");
  const auto start = Clock::now();
  const double p = std::min(1.0, c / static_cast<double>(n));
  auto out = parallel_map<Trial>(trials, threads, [&](std::int64_t t) {
    const auto g = graphs::sample_gnp(static_cast<Vertex>(n), p, stream_seed(seed, t), graphs::WeightMode::plain);
    const auto core = graphs::kcore(g, 3);
    Trial tr;
    tr.secondary = static_cast<double>(core.core_vertices.size());
    if (core.core_vertices.empty()) return tr;
    const auto h = graphs::core_graph(g, core);
    const auto res = matroid::orient_indegree_target(h, 2);
    tr.value = static_cast<double>(res.flow_value) / (2.0 * static_cast<double>(h.vertex_count()));
    return tr;
  });
  TrialSummary s;
  s.experiment = "orientation";
  s.n = n;
  s.k = 3;
  s.c = c;
  s.trials = trials;
  s.seed = seed;
  s.secondary_name = "core_size";
  for (const auto& t : out)
    if (!t.value) ++s.skipped;
  summarize(s, out);
  s.prediction = 1.0;
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

}  // namespace kforest::experiments

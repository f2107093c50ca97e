#include "kforest/graph_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "kforest/errors.hpp"
#include "kforest/rng.hpp"
#include "kforest/special_fn.hpp"

namespace kforest::graphs {

WeightedGraph sample_gnp(Vertex n, double p, std::uint64_t seed, WeightMode mode) {
  if (n < 1) throw DomainError("sample_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_gnp: p must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  const auto weight = [&]() { return mode == WeightMode::conditional ? p * rng.uniform_pos() : rng.uniform(); };
  if (p == 0.0) return WeightedGraph(n, {}, true);
  if (p == 1.0) {
    for (Vertex v = 1; v < n; ++v)
      for (Vertex u = 0; u < v; ++u) edges.push_back({u, v, weight()});
    return WeightedGraph(n, std::move(edges), true);
  }
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(0.5 * p * n * (n - 1.0) * 1.1 + 16));
  // Pairs (w, v), w < v, visited in order v = 1.., w = 0..v-1, jumping by
  // geometric gaps.
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double skip = std::floor(std::log(rng.uniform_pos()) / log_q);
    w += 1 + static_cast<std::int64_t>(std::fmin(skip, 9.0e15));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v), weight()});
  }
  return WeightedGraph(n, std::move(edges), true);
}

WeightedGraph sample_gnm(Vertex n, std::int64_t m, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_gnm: n must be >= 1");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < 0 || m > pairs) throw DomainError("sample_gnm: m must lie in [0, C(n,2)]");
  Rng rng(seed);
  // Floyd's subset sampling over pair indices.
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::int64_t j = pairs - m; j < pairs; ++j) {
    const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::int64_t> idx(chosen.begin(), chosen.end());
  std::sort(idx.begin(), idx.end());
  std::vector<Edge> edges;
  edges.reserve(idx.size());
  for (std::int64_t k : idx) {
    auto v = static_cast<std::int64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
    while (v * (v - 1) / 2 > k) --v;
    while ((v + 1) * v / 2 <= k) ++v;
    const std::int64_t u = k - v * (v - 1) / 2;
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 0.0});
  }
  for (Edge& e : edges) e.weight = rng.uniform();
  return WeightedGraph(n, std::move(edges), true);
}

WeightedGraph sample_complete_weights(Vertex n, std::uint64_t seed, std::int64_t max_edges) {
  if (n < 2) throw DomainError("sample_complete_weights: n must be >= 2");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (pairs > max_edges)
    throw CapacityError("sample_complete_weights: K_" + std::to_string(n) + " has " + std::to_string(pairs) +
                        " edges, above the budget of " + std::to_string(max_edges));
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(pairs));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, rng.uniform()});
  return WeightedGraph(n, std::move(edges), true);
}

namespace {

struct PeelState {
  std::vector<std::int64_t> deg;
  std::vector<char> removed;
  std::vector<std::vector<EdgeId>> inc;
};

PeelState init_peel(const WeightedGraph& g) {
  PeelState s;
  s.deg = g.degrees();
  s.removed.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  s.inc = g.incidence();
  return s;
}

template <class Push>
void remove_vertex(const WeightedGraph& g, PeelState& s, Vertex x, int kappa, Push&& push) {
  s.removed[static_cast<std::size_t>(x)] = 1;
  for (EdgeId id : s.inc[static_cast<std::size_t>(x)]) {
    const Edge& e = g.edge(id);
    const Vertex y = e.u == x ? e.v : e.u;
    if (y == x || s.removed[static_cast<std::size_t>(y)]) continue;
    if (--s.deg[static_cast<std::size_t>(y)] == kappa - 1) push(y);
  }
}

CorePeelResult finish(const WeightedGraph& g, const PeelState& s, std::vector<Vertex> order) {
  CorePeelResult r;
  r.peel_order = std::move(order);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!s.removed[static_cast<std::size_t>(v)]) r.core_vertices.push_back(v);
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    if (!s.removed[static_cast<std::size_t>(e.u)] && !s.removed[static_cast<std::size_t>(e.v)])
      r.core_edges.push_back(i);
  }
  return r;
}

}  // namespace

CorePeelResult kcore(const WeightedGraph& g, int kappa) {
  PeelState s = init_peel(g);
  std::vector<Vertex> stack;
  std::vector<Vertex> order;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (s.deg[static_cast<std::size_t>(v)] < kappa) stack.push_back(v);
  // Every vertex is pushed at most once: either initially, or when its degree
  // first drops to kappa - 1.
  std::size_t head = 0;
  while (head < stack.size()) {
    const Vertex x = stack[head++];
    order.push_back(x);
    remove_vertex(g, s, x, kappa, [&](Vertex y) { stack.push_back(y); });
  }
  return finish(g, s, std::move(order));
}

CorePeelResult kcore_random_order(const WeightedGraph& g, int kappa, std::uint64_t seed) {
  Rng rng(seed);
  PeelState s = init_peel(g);
  std::vector<Vertex> pool;
  std::vector<Vertex> order;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (s.deg[static_cast<std::size_t>(v)] < kappa) pool.push_back(v);
  while (!pool.empty()) {
    const auto j = static_cast<std::size_t>(rng.below(pool.size()));
    std::swap(pool[j], pool.back());
    const Vertex x = pool.back();
    pool.pop_back();
    order.push_back(x);
    remove_vertex(g, s, x, kappa, [&](Vertex y) { pool.push_back(y); });
  }
  return finish(g, s, std::move(order));
}

WeightedGraph core_graph(const WeightedGraph& g, const CorePeelResult& core) {
  std::vector<Vertex> label(static_cast<std::size_t>(g.vertex_count()), -1);
  Vertex next = 0;
  for (Vertex v : core.core_vertices) label[static_cast<std::size_t>(v)] = next++;
  std::vector<Edge> edges;
  edges.reserve(core.core_edges.size());
  for (EdgeId id : core.core_edges) {
    const Edge& e = g.edge(id);
    edges.push_back({label[static_cast<std::size_t>(e.u)], label[static_cast<std::size_t>(e.v)], e.weight});
  }
  return WeightedGraph(next, std::move(edges), g.is_simple());
}

namespace {

// Inversion sampler for Po(lambda) conditioned on >= 3.
class TruncatedPoisson {
 public:
  explicit TruncatedPoisson(double lambda) {
    const double norm = special::poisson_tail(3, lambda);
    double pmf = std::exp(-lambda + 3.0 * std::log(lambda) - std::lgamma(4.0)) / norm;
    double acc = 0.0;
    for (int j = 3; j < 10000; ++j) {
      acc += pmf;
      cdf_.push_back(std::fmin(acc, 1.0));
      pmf *= lambda / (j + 1);
      if (j > lambda && pmf < 1e-18) break;
    }
    cdf_.back() = 1.0;
  }
  std::int64_t draw(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return 3 + static_cast<std::int64_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

DegreeSequence sample_truncated_poisson_degrees(std::int64_t N, std::int64_t M, std::uint64_t seed,
                                                const DegreeSamplerOptions& opts) {
  if (N < 1) throw DomainError("sample_truncated_poisson_degrees: N must be >= 1");
  if (2 * M < 3 * N)
    throw InfeasibleError("sample_truncated_poisson_degrees: 2M/N = " +
                          std::to_string(2.0 * static_cast<double>(M) / static_cast<double>(N)) +
                          " is below the minimum degree 3");
  DegreeSequence out;
  out.total = 2 * M;
  const double mean = 2.0 * static_cast<double>(M) / static_cast<double>(N);
  out.lambda = special::g_inverse(0, mean);
  if (2 * M == 3 * N) {
    out.degrees.assign(static_cast<std::size_t>(N), 3);
    return out;
  }
  const TruncatedPoisson law(out.lambda);
  Rng rng(seed);
  std::vector<std::int64_t> d(static_cast<std::size_t>(N));
  for (std::int64_t attempt = 0; attempt < opts.max_tries; ++attempt) {
    std::int64_t total = 0;
    for (auto& x : d) total += (x = law.draw(rng));
    ++out.exact_tries;
    if (total == 2 * M) {
      out.degrees = std::move(d);
      return out;
    }
    if (attempt + 1 < opts.exact_tries) continue;
    std::int64_t diff = total - 2 * M;
    const std::int64_t cap = opts.adjust_steps_per_vertex * N;
    std::int64_t steps = 0;
    for (; steps < cap && diff != 0; ++steps) {
      const auto v = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(N)));
      const std::int64_t fresh = law.draw(rng);
      const std::int64_t next = diff - d[v] + fresh;
      if (std::llabs(next) < std::llabs(diff)) {
        d[v] = fresh;
        diff = next;
      }
    }
    if (diff == 0) {
      out.adjusted = true;
      out.adjust_steps = steps;
      out.degrees = std::move(d);
      return out;
    }
  }
  throw SamplingError("sample_truncated_poisson_degrees: no sequence with total " + std::to_string(2 * M) +
                      " after " + std::to_string(out.exact_tries) + " draws (lambda = " +
                      std::to_string(out.lambda) + ")");
}

WeightedGraph sample_core_multigraph(const DegreeSequence& degrees, std::uint64_t seed, bool require_simple,
                                     int max_retries) {
  std::int64_t total = 0;
  for (std::int64_t x : degrees.degrees) {
    if (x < 0) throw DomainError("sample_core_multigraph: negative degree");
    total += x;
  }
  if (total % 2 != 0) throw DomainError("sample_core_multigraph: degree total is odd");
  const auto n = static_cast<Vertex>(degrees.degrees.size());
  std::vector<Vertex> points;
  points.reserve(static_cast<std::size_t>(total));
  for (Vertex v = 0; v < n; ++v) points.insert(points.end(), static_cast<std::size_t>(degrees.degrees[static_cast<std::size_t>(v)]), v);
  Rng rng(seed);
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
      Edge e{std::min(points[i], points[i + 1]), std::max(points[i], points[i + 1]), 1.0};
      if (e.u == e.v) simple = false;
      edges.push_back(e);
    }
    if (simple) {
      std::vector<std::int64_t> keys;
      keys.reserve(edges.size());
      for (const Edge& e : edges) keys.push_back(static_cast<std::int64_t>(e.u) * n + e.v);
      std::sort(keys.begin(), keys.end());
      simple = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
    }
    if (simple || !require_simple) return WeightedGraph(n, std::move(edges), simple);
  }
  throw SamplingError("sample_core_multigraph: no simple graph after " + std::to_string(max_retries) +
                      " resamples");
}

}  // namespace kforest::graphs

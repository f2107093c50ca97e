#include "kforest/matroid_union.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kforest/errors.hpp"
#include "kforest/graph_core.hpp"
#include "kforest/maxflow.hpp"

namespace kforest::matroid {
namespace {

void check_k(int k, const char* fn) {
  if (k < 1) throw DomainError(std::string(fn) + ": k must be >= 1");
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Union-find without path compression so unions can be undone in LIFO order.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }
  void undo() {
    const std::size_t b = history_.back();
    history_.pop_back();
    const std::size_t a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

}  // namespace

std::vector<std::vector<EdgeId>> ForestPartition::classes() const {
  std::vector<std::vector<EdgeId>> out(static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < class_of.size(); ++e)
    if (class_of[e] >= 0) out[static_cast<std::size_t>(class_of[e])].push_back(static_cast<EdgeId>(e));
  return out;
}

std::int64_t ForestPartition::assigned_count() const {
  return std::count_if(class_of.begin(), class_of.end(), [](int c) { return c >= 0; });
}

bool is_valid_partition(const WeightedGraph& g, const ForestPartition& p) {
  if (p.k < 1 || p.class_of.size() != static_cast<std::size_t>(g.edge_count())) return false;
  std::vector<UnionFind> uf(static_cast<std::size_t>(p.k), UnionFind(static_cast<std::size_t>(g.vertex_count())));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int c = p.class_of[static_cast<std::size_t>(e)];
    if (c < -1 || c >= p.k) return false;
    if (c < 0) continue;
    const Edge& ed = g.edge(e);
    if (!uf[static_cast<std::size_t>(c)].unite(static_cast<std::size_t>(ed.u), static_cast<std::size_t>(ed.v)))
      return false;
  }
  return true;
}

ForestPacker::ForestPacker(const WeightedGraph& g, int k) : g_(&g) {
  check_k(k, "ForestPacker");
  part_.k = k;
  part_.class_of.assign(static_cast<std::size_t>(g.edge_count()), -1);
  adj_.assign(static_cast<std::size_t>(k), std::vector<std::vector<Arc>>(static_cast<std::size_t>(g.vertex_count())));
  saturated_.resize(static_cast<std::size_t>(g.vertex_count()));
  std::iota(saturated_.begin(), saturated_.end(), 0);
  label_.assign(static_cast<std::size_t>(g.edge_count()), -2);
  const std::vector<Vertex> per_vertex(static_cast<std::size_t>(g.vertex_count()));
  up_.assign(static_cast<std::size_t>(k), per_vertex);
  up_edge_.assign(static_cast<std::size_t>(k), std::vector<EdgeId>(per_vertex.size()));
  depth_.assign(static_cast<std::size_t>(k), std::vector<std::int32_t>(per_vertex.size()));
  tree_.assign(static_cast<std::size_t>(k), per_vertex);
  tree_size_.assign(static_cast<std::size_t>(k), std::vector<std::int32_t>(per_vertex.size()));
  skip_.assign(static_cast<std::size_t>(k), per_vertex);
  for (auto& sk : skip_) std::iota(sk.begin(), sk.end(), 0);
}

void ForestPacker::link(int cls, EdgeId e) {
  const Edge& ed = g_->edge(e);
  auto& a = adj_[static_cast<std::size_t>(cls)];
  a[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
  a[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
}

void ForestPacker::unlink(int cls, EdgeId e) {
  const Edge& ed = g_->edge(e);
  auto& a = adj_[static_cast<std::size_t>(cls)];
  for (Vertex x : {ed.u, ed.v}) {
    auto& lst = a[static_cast<std::size_t>(x)];
    const auto it = std::find_if(lst.begin(), lst.end(), [e](const Arc& arc) { return arc.edge == e; });
    *it = lst.back();
    lst.pop_back();
  }
}

void ForestPacker::root_forests() {
  const auto n = static_cast<std::size_t>(g_->vertex_count());
  std::vector<Vertex> queue;
  for (std::size_t c = 0; c < up_.size(); ++c) {
    const auto& adj = adj_[c];
    auto &up = up_[c], &tree = tree_[c];
    auto& up_edge = up_edge_[c];
    auto& depth = depth_[c];
    std::fill(tree.begin(), tree.end(), -1);
    for (std::size_t r = 0; r < n; ++r) {
      if (tree[r] >= 0) continue;
      const auto root = static_cast<Vertex>(r);
      tree[r] = root;
      up[r] = root;
      up_edge[r] = -1;
      depth[r] = 0;
      queue.assign(1, root);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Vertex x = queue[qi];
        for (const Arc& arc : adj[static_cast<std::size_t>(x)]) {
          const auto y = static_cast<std::size_t>(arc.to);
          if (tree[y] >= 0) continue;
          tree[y] = root;
          up[y] = x;
          up_edge[y] = arc.edge;
          depth[y] = depth[static_cast<std::size_t>(x)] + 1;
          queue.push_back(arc.to);
        }
      }
      tree_size_[c][r] = static_cast<std::int32_t>(queue.size());
    }
  }
  rooted_ = true;
}

void ForestPacker::link_rooted(int cls, EdgeId e) {
  const auto c = static_cast<std::size_t>(cls);
  const Edge& ed = g_->edge(e);
  auto &up = up_[c], &tree = tree_[c];
  auto& up_edge = up_edge_[c];
  auto& depth = depth_[c];
  Vertex small = ed.u, big = ed.v;
  if (tree_size_[c][static_cast<std::size_t>(tree[static_cast<std::size_t>(small)])] >
      tree_size_[c][static_cast<std::size_t>(tree[static_cast<std::size_t>(big)])])
    std::swap(small, big);
  const Vertex root = tree[static_cast<std::size_t>(big)];
  // hang the smaller tree below `big`, rooted at `small`
  up[static_cast<std::size_t>(small)] = big;
  up_edge[static_cast<std::size_t>(small)] = e;
  depth[static_cast<std::size_t>(small)] = depth[static_cast<std::size_t>(big)] + 1;
  tree_size_[c][static_cast<std::size_t>(root)] +=
      tree_size_[c][static_cast<std::size_t>(tree[static_cast<std::size_t>(small)])];
  tree[static_cast<std::size_t>(small)] = root;
  std::vector<Vertex> queue{small};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex x = queue[qi];
    for (const Arc& arc : adj_[c][static_cast<std::size_t>(x)]) {
      if (arc.edge == up_edge[static_cast<std::size_t>(x)]) continue;
      const auto y = static_cast<std::size_t>(arc.to);
      up[y] = x;
      up_edge[y] = arc.edge;
      depth[y] = depth[static_cast<std::size_t>(x)] + 1;
      tree[y] = root;
      queue.push_back(arc.to);
    }
  }
  link(cls, e);
}

// Nearest ancestor of v (v included) whose edge to its parent is unlabelled.
Vertex ForestPacker::skip_root(int cls, Vertex v) {
  auto& p = skip_[static_cast<std::size_t>(cls)];
  while (p[static_cast<std::size_t>(v)] != v) {
    p[static_cast<std::size_t>(v)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(v)])];
    v = p[static_cast<std::size_t>(v)];
  }
  return v;
}

Vertex ForestPacker::saturated_root(Vertex v) {
  auto& p = saturated_;
  while (p[static_cast<std::size_t>(v)] != v) {
    p[static_cast<std::size_t>(v)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(v)])];
    v = p[static_cast<std::size_t>(v)];
  }
  return v;
}

bool ForestPacker::insert(EdgeId x) {
  const Edge& ex = g_->edge(x);
  if (ex.u == ex.v) return false;
  if (part_.class_of[static_cast<std::size_t>(x)] >= 0) return false;
  if (saturated_root(ex.u) == saturated_root(ex.v)) return false;
  const int k = part_.k;
  if (!rooted_) root_forests();
  for (int j = 0; j < k; ++j) {
    const auto& tree = tree_[static_cast<std::size_t>(j)];
    if (tree[static_cast<std::size_t>(ex.u)] != tree[static_cast<std::size_t>(ex.v)]) {
      link_rooted(j, x);
      part_.class_of[static_cast<std::size_t>(x)] = j;
      ++size_;
      return true;
    }
  }

  // Breadth-first labelling: an edge z in class c frees a slot if its ends
  // lie in different trees of some other class j; otherwise every unlabelled
  // edge of the j-cycle it closes is labelled with parent z.
  auto& parent = label_;
  auto reset_scratch = [&](const std::vector<EdgeId>& queue) {
    for (EdgeId y : queue) parent[static_cast<std::size_t>(y)] = -2;
    for (auto [j, v] : skipped_) skip_[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] = v;
    skipped_.clear();
  };
  std::vector<EdgeId> queue{x};
  parent[static_cast<std::size_t>(x)] = -1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const EdgeId z = queue[qi];
    const Edge& ez = g_->edge(z);
    const int cz = part_.class_of[static_cast<std::size_t>(z)];
    int free_class = -1;
    for (int j = 0; j < k && free_class < 0; ++j)
      if (j != cz && tree_[static_cast<std::size_t>(j)][static_cast<std::size_t>(ez.u)] !=
                         tree_[static_cast<std::size_t>(j)][static_cast<std::size_t>(ez.v)])
        free_class = j;
    if (free_class >= 0) {
      // Shift every edge on the exchange chain one step.
      EdgeId cur = z;
      int target = free_class;
      while (true) {
        const int old = part_.class_of[static_cast<std::size_t>(cur)];
        if (old >= 0) unlink(old, cur);
        link(target, cur);
        part_.class_of[static_cast<std::size_t>(cur)] = target;
        const EdgeId p = parent[static_cast<std::size_t>(cur)];
        if (p < 0) break;
        target = old;
        cur = p;
      }
      ++size_;
      reset_scratch(queue);
      rooted_ = false;
      return true;
    }
    for (int j = 0; j < k; ++j) {
      if (j == cz) continue;
      const auto js = static_cast<std::size_t>(j);
      Vertex a = skip_root(j, ez.u), b = skip_root(j, ez.v);
      while (a != b) {
        if (depth_[js][static_cast<std::size_t>(a)] < depth_[js][static_cast<std::size_t>(b)]) std::swap(a, b);
        // a is strictly below the meeting point, so its parent edge is on the cycle
        const EdgeId y = up_edge_[js][static_cast<std::size_t>(a)];
        if (parent[static_cast<std::size_t>(y)] == -2) {
          parent[static_cast<std::size_t>(y)] = z;
          queue.push_back(y);
        }
        skip_[js][static_cast<std::size_t>(a)] = up_[js][static_cast<std::size_t>(a)];
        skipped_.emplace_back(j, a);
        a = skip_root(j, a);
      }
    }
  }
  reset_scratch(queue);
  for (EdgeId y : queue) {
    const Edge& ey = g_->edge(y);
    const Vertex a = saturated_root(ey.u), b = saturated_root(ey.v);
    if (a != b) saturated_[static_cast<std::size_t>(a)] = b;
  }
  return false;
}

IndependenceResult is_independent(const WeightedGraph& g, std::span<const EdgeId> subset, int k) {
  check_k(k, "is_independent");
  ForestPacker packer(g, k);
  for (EdgeId e : subset) {
    if (e < 0 || e >= g.edge_count()) throw DomainError("is_independent: edge id out of range");
    if (!packer.insert(e)) return {false, std::nullopt};
  }
  return {true, packer.partition()};
}

std::int64_t rank_k(const WeightedGraph& g, int k) {
  check_k(k, "rank_k");
  ForestPacker packer(g, k);
  const std::int64_t cap = static_cast<std::int64_t>(k) * std::max<Vertex>(0, g.vertex_count() - 1);
  for (EdgeId e = 0; e < g.edge_count() && packer.size() < cap; ++e) packer.insert(e);
  return packer.size();
}

namespace {

struct BruteSearch {
  const WeightedGraph& g;
  int k;
  std::vector<RollbackUnionFind> uf;
  std::int64_t best = 0;
  std::int64_t ceiling = 0;

  void run(EdgeId i, std::int64_t held, int used) {
    if (held > best) best = held;
    if (best >= ceiling) return;
    if (i == g.edge_count()) return;
    if (held + (g.edge_count() - i) <= best) return;
    const Edge& e = g.edge(i);
    const int limit = std::min(k, used + 1);
    for (int j = 0; j < limit; ++j) {
      auto& u = uf[static_cast<std::size_t>(j)];
      if (u.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
        run(i + 1, held + 1, std::max(used, j + 1));
        u.undo();
        if (best >= ceiling) return;
      }
    }
    run(i + 1, held, used);
  }
};

}  // namespace

std::int64_t brute_rank_k(const WeightedGraph& g, int k) {
  check_k(k, "brute_rank_k");
  if (g.edge_count() > 20) throw CapacityError("brute_rank_k: at most 20 edges");
  UnionFind comps(static_cast<std::size_t>(g.vertex_count()));
  std::int64_t merges = 0;
  for (const Edge& e : g.edges()) merges += comps.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
  BruteSearch s{g, k, std::vector<RollbackUnionFind>(static_cast<std::size_t>(k), RollbackUnionFind(static_cast<std::size_t>(g.vertex_count()))), 0,
                std::min<std::int64_t>(g.edge_count(), k * merges)};
  s.run(0, 0, 0);
  return s.best;
}

SpanningTrees min_weight_k_spanning_trees(const WeightedGraph& g, int k) {
  check_k(k, "min_weight_k_spanning_trees");
  std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&g](EdgeId a, EdgeId b) {
    const double wa = g.edge(a).weight;
    const double wb = g.edge(b).weight;
    return wa < wb || (wa == wb && a < b);
  });
  const std::int64_t target = static_cast<std::int64_t>(k) * std::max<Vertex>(0, g.vertex_count() - 1);
  ForestPacker packer(g, k);
  SpanningTrees out;
  for (EdgeId e : order) {
    if (packer.size() == target) break;
    ++out.edges_scanned;
    if (packer.insert(e)) out.total_weight += g.edge(e).weight;
  }
  if (packer.size() < target)
    throw InfeasibleError("min_weight_k_spanning_trees: graph has no " + std::to_string(k) +
                          " edge-disjoint spanning trees (rank " + std::to_string(packer.size()) + " < " +
                          std::to_string(target) + ")");
  out.partition = packer.partition();
  return out;
}

std::int64_t rank_via_core_identity(const WeightedGraph& g, int k) {
  check_k(k, "rank_via_core_identity");
  const graphs::CorePeelResult core = graphs::kcore(g, k + 1);
  const std::int64_t outside = g.edge_count() - static_cast<std::int64_t>(core.core_edges.size());
  return outside + rank_k(g.edge_subgraph(core.core_edges), k);
}

OrientationResult orient_indegree_target(const WeightedGraph& g, int target) {
  if (target < 1) throw DomainError("orient_indegree_target: target must be >= 1");
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const int s = 0;
  const int t = 1;
  MaxFlow flow(2 + n + m);
  for (Vertex v = 0; v < n; ++v) flow.add_arc(s, 2 + v, target);
  std::vector<int> arc_u(static_cast<std::size_t>(m));
  std::vector<int> arc_v(static_cast<std::size_t>(m), -1);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    arc_u[static_cast<std::size_t>(e)] = flow.add_arc(2 + ed.u, 2 + n + e, 1);
    if (ed.v != ed.u) arc_v[static_cast<std::size_t>(e)] = flow.add_arc(2 + ed.v, 2 + n + e, 1);
    flow.add_arc(2 + n + e, t, 1);
  }
  OrientationResult out;
  out.flow_value = flow.solve(s, t);
  Orientation& o = out.orientation;
  o.head.assign(static_cast<std::size_t>(m), -1);
  o.indegree.assign(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> unused;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    Vertex h = -1;
    if (flow.flow_on(arc_u[static_cast<std::size_t>(e)]) > 0)
      h = ed.u;
    else if (arc_v[static_cast<std::size_t>(e)] >= 0 && flow.flow_on(arc_v[static_cast<std::size_t>(e)]) > 0)
      h = ed.v;
    if (h < 0) {
      unused.push_back(e);
      continue;
    }
    o.head[static_cast<std::size_t>(e)] = h;
    ++o.indegree[static_cast<std::size_t>(h)];
  }
  for (EdgeId e : unused) {
    const Edge& ed = g.edge(e);
    const Vertex h = o.indegree[static_cast<std::size_t>(ed.v)] < o.indegree[static_cast<std::size_t>(ed.u)] ? ed.v : ed.u;
    o.head[static_cast<std::size_t>(e)] = h;
    ++o.indegree[static_cast<std::size_t>(h)];
  }
  return out;
}

PfdResult pfd_decompose(const WeightedGraph& g, int k) {
  check_k(k, "pfd_decompose");
  const OrientationResult o = orient_indegree_target(g, k);
  if (o.flow_value < g.edge_count())
    throw InfeasibleError("pfd_decompose: no orientation with indegree <= " + std::to_string(k) + " (only " +
                          std::to_string(o.flow_value) + " of " + std::to_string(g.edge_count()) +
                          " edges placed)");
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> next_slot(n, 0);
  std::vector<int> slot(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    slot[static_cast<std::size_t>(e)] = next_slot[static_cast<std::size_t>(o.orientation.head[static_cast<std::size_t>(e)])]++;
  PfdResult out;
  out.forests.k = k;
  out.forests.class_of.assign(static_cast<std::size_t>(g.edge_count()), -1);
  // Each class has indegree <= 1, so its components carry at most one cycle;
  // Kruskal-style insertion drops exactly one edge per cycle.
  std::vector<UnionFind> uf(static_cast<std::size_t>(k), UnionFind(n));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int c = slot[static_cast<std::size_t>(e)];
    const Edge& ed = g.edge(e);
    if (uf[static_cast<std::size_t>(c)].unite(static_cast<std::size_t>(ed.u), static_cast<std::size_t>(ed.v)))
      out.forests.class_of[static_cast<std::size_t>(e)] = c;
    else
      out.removed.push_back(e);
  }
  return out;
}

}  // namespace kforest::matroid

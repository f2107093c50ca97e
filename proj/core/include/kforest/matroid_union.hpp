#pragma once

// Independence, rank and minimum-weight bases in the union of k graphic
// matroids (edge sets that split into k forests), plus flow-based
// orientations.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kforest/graph.hpp"

namespace kforest::matroid {

/// Assignment of edges to forests. class_of[e] is in [0, k) or -1.
struct ForestPartition {
  int k = 0;
  std::vector<int> class_of;

  std::vector<std::vector<EdgeId>> classes() const;
  std::int64_t assigned_count() const;
};

/// Re-checks a partition from scratch: class indices in range and every
/// class acyclic. Independent of the augmenting-path solver.
bool is_valid_partition(const WeightedGraph& g, const ForestPartition& p);

/// Incremental k-forest packing by Edmonds' augmenting paths. Not thread-safe;
/// one instance per computation.
class ForestPacker {
 public:
  ForestPacker(const WeightedGraph& g, int k);

  /// Tries to add edge e, relabelling edges along a shortest exchange path.
  /// Returns false, leaving the packing unchanged, if the current set plus e
  /// is not independent.
  bool insert(EdgeId e);

  std::int64_t size() const noexcept { return size_; }
  const ForestPartition& partition() const noexcept { return part_; }

 private:
  struct Arc {
    Vertex to;
    EdgeId edge;
  };
  void root_forests();
  void link_rooted(int cls, EdgeId e);
  Vertex skip_root(int cls, Vertex v);
  void link(int cls, EdgeId e);
  void unlink(int cls, EdgeId e);
  Vertex saturated_root(Vertex v);

  const WeightedGraph* g_;
  ForestPartition part_;
  std::int64_t size_ = 0;
  std::vector<std::vector<std::vector<Arc>>> adj_;  // [class][vertex]
  // Vertex sets already spanned by k trees of the packing (a failed search
  // proves this for every component of its labelled edges). An edge with both
  // ends in one set is dependent for good, since the packing only grows.
  std::vector<Vertex> saturated_;
  // Rooted copy of every forest (parent, parent edge, depth, tree id and
  // size by root). Plain links keep it current by re-rooting the smaller
  // tree; an exchange along a longer chain marks it stale.
  bool rooted_ = false;
  std::vector<std::vector<Vertex>> up_;
  std::vector<std::vector<EdgeId>> up_edge_;
  std::vector<std::vector<std::int32_t>> depth_;
  std::vector<std::vector<Vertex>> tree_;
  std::vector<std::vector<std::int32_t>> tree_size_;
  // search scratch: per class, a union-find that hops over labelled tree edges
  std::vector<std::vector<Vertex>> skip_;
  std::vector<std::pair<int, Vertex>> skipped_;
  std::vector<EdgeId> label_;  // search parent per edge, -2 = unlabelled
};

struct IndependenceResult {
  bool independent = false;
  std::optional<ForestPartition> witness;
};

IndependenceResult is_independent(const WeightedGraph& g, std::span<const EdgeId> subset, int k);

/// Size of a largest edge set splitting into k forests.
std::int64_t rank_k(const WeightedGraph& g, int k);

/// Exhaustive rank by backtracking over assignments; |E| <= 20.
std::int64_t brute_rank_k(const WeightedGraph& g, int k);

struct SpanningTrees {
  double total_weight = 0.0;
  ForestPartition partition;
  std::int64_t edges_scanned = 0;
};

/// k edge-disjoint spanning trees of least total weight by the matroid greedy
/// algorithm over edges ordered by (weight, index). Throws InfeasibleError if
/// the graph has no k disjoint spanning trees.
SpanningTrees min_weight_k_spanning_trees(const WeightedGraph& g, int k);

/// |edges outside the (k+1)-core| + rank of the core.
std::int64_t rank_via_core_identity(const WeightedGraph& g, int k);

struct Orientation {
  std::vector<Vertex> head;          ///< vertex each edge points into
  std::vector<std::int64_t> indegree;
};

struct OrientationResult {
  Orientation orientation;
  std::int64_t flow_value = 0;  ///< sum over v of min(target, indegree)
};

/// Orientation maximizing sum_v min(target, indeg v), by max-flow on
/// source -> vertex (capacity target) -> incident edge -> sink (capacity 1).
/// Edges the flow leaves unused are pointed at the endpoint with smaller
/// indegree.
OrientationResult orient_indegree_target(const WeightedGraph& g, int target);

struct PfdResult {
  ForestPartition forests;
  std::vector<EdgeId> removed;
};

/// Orients every edge with indegree <= k (InfeasibleError if impossible),
/// splits each vertex's incoming edges over k classes so every class has
/// indegree <= 1, then drops one edge from each cycle of each class.
PfdResult pfd_decompose(const WeightedGraph& g, int k);

}  // namespace kforest::matroid

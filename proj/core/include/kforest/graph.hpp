#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kforest {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;
};

/// Undirected graph on vertices 0..n-1 with an indexed edge list.
///
/// Endpoints are stored with u <= v. A simple graph has u < v and no repeated
/// pair; a multigraph (configuration model output) may contain both. Weights
/// lie in [0, 1]. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and normalizes; throws DomainError on a bad endpoint or weight
  /// and when `simple` is requested for a graph with loops or parallel edges.
  WeightedGraph(Vertex n, std::vector<Edge> edges, bool simple = true);

  Vertex vertex_count() const noexcept { return n_; }
  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(edges_.size()); }
  bool is_simple() const noexcept { return simple_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  /// Sub-edge-list with the original vertex numbering.
  WeightedGraph edge_subgraph(std::span<const EdgeId> ids) const;

  /// Per-vertex lists of incident edge ids (a loop appears twice).
  std::vector<std::vector<EdgeId>> incidence() const;

  std::vector<std::int64_t> degrees() const;

  double total_weight() const noexcept;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  bool simple_ = true;
};

/// Text edge list: header "n m", then m lines "u v weight". Weights are
/// written in shortest round-trip form so that reading back is bit-exact.
void write_edge_list(std::ostream& os, const WeightedGraph& g);

/// Inverse of write_edge_list. Throws FormatError on malformed input. Parallel
/// edges or loops in the file yield a multigraph.
WeightedGraph read_edge_list(std::istream& is);

std::string to_edge_list_string(const WeightedGraph& g);

}  // namespace kforest

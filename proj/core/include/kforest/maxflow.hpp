#pragma once

#include <cstdint>
#include <vector>

namespace kforest {

/// Dinic's algorithm with integral capacities.
class MaxFlow {
 public:
  using Cap = std::int64_t;

  explicit MaxFlow(int nodes);

  /// Adds arc u -> v and returns its index (for flow_on).
  int add_arc(int u, int v, Cap capacity);

  Cap solve(int source, int sink);

  /// Flow currently routed on the arc returned by add_arc.
  Cap flow_on(int arc) const;

  int node_count() const noexcept { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    int next;
    Cap cap;
  };
  bool build_levels(int s, int t);
  Cap push(int u, int t, Cap limit);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<Cap> original_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace kforest

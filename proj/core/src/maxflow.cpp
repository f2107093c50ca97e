#include "kforest/maxflow.hpp"

#include <algorithm>
#include <limits>

#include "kforest/errors.hpp"

namespace kforest {

MaxFlow::MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {
  if (nodes < 2) throw DomainError("MaxFlow: need at least two nodes");
}

int MaxFlow::add_arc(int u, int v, Cap capacity) {
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count()) throw DomainError("MaxFlow: node out of range");
  if (capacity < 0) throw DomainError("MaxFlow: negative capacity");
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({v, head_[static_cast<std::size_t>(u)], capacity});
  head_[static_cast<std::size_t>(u)] = id;
  arcs_.push_back({u, head_[static_cast<std::size_t>(v)], 0});
  head_[static_cast<std::size_t>(v)] = id + 1;
  original_.push_back(capacity);
  original_.push_back(0);
  return id;
}

MaxFlow::Cap MaxFlow::flow_on(int arc) const {
  return original_.at(static_cast<std::size_t>(arc)) - arcs_.at(static_cast<std::size_t>(arc)).cap;
}

bool MaxFlow::build_levels(int s, int t) {
  level_.assign(head_.size(), -1);
  std::vector<int> queue{s};
  level_[static_cast<std::size_t>(s)] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    for (int a = head_[static_cast<std::size_t>(u)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
        level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

// Iterative blocking-flow DFS (recursion depth would be fine here, but the
// networks reach 10^5 nodes).
MaxFlow::Cap MaxFlow::push(int s, int t, Cap limit) {
  Cap total = 0;
  std::vector<int> path;  // arcs
  int u = s;
  while (true) {
    if (u == t) {
      Cap f = limit - total;
      for (int a : path) f = std::min(f, arcs_[static_cast<std::size_t>(a)].cap);
      for (int a : path) {
        arcs_[static_cast<std::size_t>(a)].cap -= f;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += f;
      }
      total += f;
      if (total == limit) return total;
      path.clear();
      u = s;
      continue;
    }
    int& it = iter_[static_cast<std::size_t>(u)];
    bool advanced = false;
    for (; it != -1; it = arcs_[static_cast<std::size_t>(it)].next) {
      const Arc& arc = arcs_[static_cast<std::size_t>(it)];
      if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] == level_[static_cast<std::size_t>(u)] + 1) {
        path.push_back(it);
        u = arc.to;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    if (u == s) return total;
    level_[static_cast<std::size_t>(u)] = -1;  // dead end
    const int back = path.back();
    path.pop_back();
    u = arcs_[static_cast<std::size_t>(back ^ 1)].to;
    int& parent_it = iter_[static_cast<std::size_t>(u)];
    parent_it = arcs_[static_cast<std::size_t>(parent_it)].next;
  }
}

MaxFlow::Cap MaxFlow::solve(int source, int sink) {
  if (source == sink) throw DomainError("MaxFlow: source equals sink");
  Cap flow = 0;
  while (build_levels(source, sink)) {
    iter_ = head_;
    flow += push(source, sink, std::numeric_limits<Cap>::max() / 4);
  }
  return flow;
}

}  // namespace kforest

/*!
  \file maxflow.hpp
  \brief Dinic maximum flow with 64-bit capacities.

  Used for the exact distance-to-monotonicity cut and for
  vertex-disjoint path routing.  Augmentation order is deterministic
  (edge insertion order), so results are reproducible.
*/

#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace monotest {

class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes) : head_(static_cast<std::size_t>(num_nodes), -1) {}

  int num_nodes() const { return static_cast<int>(head_.size()); }

  //! Adds a directed edge u -> v; returns its id for later flow queries.
  int add_edge(int u, int v, std::int64_t cap) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{v, head_[static_cast<std::size_t>(u)], cap});
    head_[static_cast<std::size_t>(u)] = id;
    edges_.push_back(Edge{u, head_[static_cast<std::size_t>(v)], 0});
    head_[static_cast<std::size_t>(v)] = id + 1;
    return id;
  }

  std::int64_t flow_on(int edge_id) const {
    return edges_[static_cast<std::size_t>(edge_id) ^ 1].cap;
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
        total += pushed;
    }
    return total;
  }

  //! After max_flow: true iff the node is reachable from the source in the residual graph.
  bool source_side(int v) const { return level_[static_cast<std::size_t>(v)] >= 0; }

 private:
  struct Edge {
    int to;
    int next;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
          level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(ed.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t limit) {
    if (u == t) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
      Edge& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.cap <= 0 || level_[static_cast<std::size_t>(ed.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      const std::int64_t pushed = dfs(ed.to, t, std::min(limit, ed.cap));
      if (pushed > 0) {
        ed.cap -= pushed;
        edges_[static_cast<std::size_t>(e) ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace monotest

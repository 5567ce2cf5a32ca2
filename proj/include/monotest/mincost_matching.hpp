/*!
  \file mincost_matching.hpp
  \brief Minimum-cost maximum-cardinality bipartite matching via
         successive shortest augmenting paths with potentials.

  All edge costs must be nonnegative.  Each augmentation follows a
  cheapest augmenting path under reduced costs (Dijkstra from all free
  left vertices), so after k augmentations the matching is the cheapest
  one of cardinality k; running until no augmenting path remains yields
  the cheapest maximum matching.  Deterministic given edge insertion
  order.
*/

#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace monotest {

class MinCostMatcher {
 public:
  MinCostMatcher(int num_left, int num_right)
      : num_left_(num_left), num_right_(num_right), adj_(static_cast<std::size_t>(num_left)) {}

  void add_edge(int left, int right, std::int64_t cost) {
    if (cost < 0) throw std::invalid_argument("MinCostMatcher: negative cost");
    adj_[static_cast<std::size_t>(left)].push_back(Arc{right, cost});
  }

  struct Result {
    int size = 0;
    std::int64_t total_cost = 0;
    std::vector<int> left_partner;  //!< -1 when unmatched
  };

  Result solve() {
    const int n = num_left_ + num_right_;  // node ids: left, then right
    potential_.assign(static_cast<std::size_t>(n), 0);
    match_left_.assign(static_cast<std::size_t>(num_left_), -1);
    match_right_.assign(static_cast<std::size_t>(num_right_), -1);
    matched_cost_.assign(static_cast<std::size_t>(num_left_), 0);
    Result res;
    while (augment()) ++res.size;
    res.left_partner = match_left_;
    for (int u = 0; u < num_left_; ++u)
      if (match_left_[static_cast<std::size_t>(u)] >= 0)
        res.total_cost += matched_cost_[static_cast<std::size_t>(u)];
    return res;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cost;
  };

  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  bool augment() {
    const int n = num_left_ + num_right_;
    std::vector<std::int64_t> dist(static_cast<std::size_t>(n), kInf);
    std::vector<int> prev_left(static_cast<std::size_t>(num_right_), -1);
    std::vector<std::int64_t> prev_cost(static_cast<std::size_t>(num_right_), 0);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

    for (int u = 0; u < num_left_; ++u) {
      if (match_left_[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = 0;
        heap.emplace(0, u);
      }
    }
    std::int64_t best = kInf;
    int best_right = -1;
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(v)]) continue;
      if (d >= best) continue;  // cannot improve the cheapest free sink
      if (v < num_left_) {
        const int u = v;
        for (const Arc& a : adj_[static_cast<std::size_t>(u)]) {
          if (match_left_[static_cast<std::size_t>(u)] == a.to) continue;
          const std::size_t tv = static_cast<std::size_t>(num_left_ + a.to);
          const std::int64_t rc = a.cost + potential_[static_cast<std::size_t>(u)] - potential_[tv];
          const std::int64_t nd = d + rc;
          if (nd < dist[tv]) {
            dist[tv] = nd;
            prev_left[static_cast<std::size_t>(a.to)] = u;
            prev_cost[static_cast<std::size_t>(a.to)] = a.cost;
            heap.emplace(nd, static_cast<int>(tv));
          }
        }
      } else {
        const int r = v - num_left_;
        const int u = match_right_[static_cast<std::size_t>(r)];
        if (u < 0) {
          best = d;
          best_right = r;
          continue;
        }
        // Residual arc back to the matched left vertex.
        const std::int64_t rc = -matched_cost_[static_cast<std::size_t>(u)] +
                                potential_[static_cast<std::size_t>(v)] -
                                potential_[static_cast<std::size_t>(u)];
        const std::int64_t nd = d + rc;
        if (nd < dist[static_cast<std::size_t>(u)]) {
          dist[static_cast<std::size_t>(u)] = nd;
          heap.emplace(nd, u);
        }
      }
    }
    if (best_right < 0) return false;

    // Capping by the sink distance keeps all residual reduced costs
    // nonnegative for the next pass.
    for (int v = 0; v < n; ++v)
      potential_[static_cast<std::size_t>(v)] += std::min(dist[static_cast<std::size_t>(v)], best);

    int r = best_right;
    while (r >= 0) {
      const int u = prev_left[static_cast<std::size_t>(r)];
      const int next_r = match_left_[static_cast<std::size_t>(u)];
      match_left_[static_cast<std::size_t>(u)] = r;
      match_right_[static_cast<std::size_t>(r)] = u;
      matched_cost_[static_cast<std::size_t>(u)] = prev_cost[static_cast<std::size_t>(r)];
      r = next_r;
    }
    return true;
  }

  int num_left_;
  int num_right_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::int64_t> potential_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<std::int64_t> matched_cost_;
};

}  // namespace monotest

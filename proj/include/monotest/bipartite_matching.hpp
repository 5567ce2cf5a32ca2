/*!
  \file bipartite_matching.hpp
  \brief Hopcroft-Karp maximum cardinality bipartite matching.
*/

#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace monotest {

class BipartiteMatcher {
 public:
  BipartiteMatcher(int num_left, int num_right)
      : adj_(static_cast<std::size_t>(num_left)), num_right_(num_right) {}

  void add_edge(int left, int right) { adj_[static_cast<std::size_t>(left)].push_back(right); }

  //! Runs Hopcroft-Karp; returns the matching size.
  int solve() {
    const int nl = static_cast<int>(adj_.size());
    match_left_.assign(static_cast<std::size_t>(nl), -1);
    match_right_.assign(static_cast<std::size_t>(num_right_), -1);
    int matching = 0;
    while (bfs()) {
      for (int u = 0; u < nl; ++u)
        if (match_left_[static_cast<std::size_t>(u)] < 0 && dfs(u)) ++matching;
    }
    return matching;
  }

  //! After solve(): partner of a left vertex, or -1.
  int left_partner(int u) const { return match_left_[static_cast<std::size_t>(u)]; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    const int nl = static_cast<int>(adj_.size());
    dist_.assign(static_cast<std::size_t>(nl), kInf);
    std::queue<int> q;
    for (int u = 0; u < nl; ++u) {
      if (match_left_[static_cast<std::size_t>(u)] < 0) {
        dist_[static_cast<std::size_t>(u)] = 0;
        q.push(u);
      }
    }
    bool reachable_free = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        const int w = match_right_[static_cast<std::size_t>(v)];
        if (w < 0) {
          reachable_free = true;
        } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int v : adj_[static_cast<std::size_t>(u)]) {
      const int w = match_right_[static_cast<std::size_t>(v)];
      if (w < 0 || (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        match_left_[static_cast<std::size_t>(u)] = v;
        match_right_[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(u)] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  int num_right_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace monotest

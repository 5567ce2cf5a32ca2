/*!
  \file metrics.hpp
  \brief Exact combinatorial quantities of a Boolean function: distance
         to monotonicity, violated-edge influence, middle-layer
         violated-edge matchings, average sensitivity, and violation
         matchings with length statistics.

  Everything here is exact; the expensive operations carry explicit
  dimension caps (full-table scans are 2^n, comparable-pair
  enumeration is 3^n).
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "monotest/bipartite_matching.hpp"
#include "monotest/exact.hpp"
#include "monotest/hypercube.hpp"
#include "monotest/maxflow.hpp"
#include "monotest/mincost_matching.hpp"
#include "monotest/rng.hpp"
#include "monotest/truth_table.hpp"

namespace monotest {

using EdgePair = std::pair<std::uint32_t, std::uint32_t>;  // (lower, upper) masks

// ---------------------------------------------------------------------------
// Violated edges and influences
// ---------------------------------------------------------------------------

struct ViolatedEdges {
  std::vector<EdgePair> edges;  //!< (x, x + e_i) with f(x) = 1, f(x + e_i) = 0
  Rational phi_plus;            //!< |edges| / 2^(n-1)
};

inline ViolatedEdges violated_edges(const TruthTable& f) {
  const int n = f.n();
  ViolatedEdges out;
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    if (!f.get(m)) continue;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t up = m | (1u << i);
      if (up != m && !f.get(up)) out.edges.emplace_back(m, up);
    }
  }
  out.phi_plus = Rational(out.edges.size()) / Rational(BigInt(1) << (n - 1));
  return out;
}

//! Violated directed edges across each dimension.
inline std::vector<std::int64_t> violated_edges_per_dimension(const TruthTable& f) {
  const int n = f.n();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    if (!f.get(m)) continue;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t up = m | (1u << i);
      if (up != m && !f.get(up)) ++counts[static_cast<std::size_t>(i)];
    }
  }
  return counts;
}

//! I(f): undirected bichromatic edges divided by 2^(n-1).
inline Rational average_sensitivity(const TruthTable& f) {
  const int n = f.n();
  std::int64_t bichromatic = 0;
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    for (int i = 0; i < n; ++i) {
      const std::uint32_t up = m | (1u << i);
      if (up != m && f.get(m) != f.get(up)) ++bichromatic;
    }
  }
  return Rational(bichromatic) / Rational(BigInt(1) << (n - 1));
}

// ---------------------------------------------------------------------------
// Distance to monotonicity
// ---------------------------------------------------------------------------

/*!
  \brief Minimum number of point relabelings making f monotone.

  Minimum s-t cut: s -> {f = 1} and {f = 0} -> t with unit capacity,
  effectively-infinite arcs along covering relations x -> x + e_i.  A
  finite cut picks a monotone upper set, paying one per flipped label.
*/
inline std::int64_t distance_changes(const TruthTable& f) {
  const int n = f.n();
  if (n > 20) throw std::invalid_argument("distance_changes: dimension too large");
  const std::int64_t points = static_cast<std::int64_t>(f.size());
  const int s = static_cast<int>(points);
  const int t = s + 1;
  const std::int64_t big = points + 1;
  MaxFlow net(static_cast<int>(points) + 2);
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    if (f.get(m))
      net.add_edge(s, static_cast<int>(m), 1);
    else
      net.add_edge(static_cast<int>(m), t, 1);
    for (int i = 0; i < n; ++i) {
      const std::uint32_t up = m | (1u << i);
      if (up != m) net.add_edge(static_cast<int>(m), static_cast<int>(up), big);
    }
  }
  return net.max_flow(s, t);
}

//! eps_f = (minimum relabelings) / 2^n; always <= 1/2.
inline Rational distance_to_monotonicity(const TruthTable& f) {
  return Rational(distance_changes(f)) / Rational(BigInt(1) << f.n());
}

// ---------------------------------------------------------------------------
// Violation graph and matchings
// ---------------------------------------------------------------------------

/*!
  \brief All comparable violating pairs x < y, f(x) = 1, f(y) = 0,
         bipartite between the ones and the zeros.
*/
struct ViolationGraph {
  int n = 0;
  std::vector<std::uint32_t> ones;
  std::vector<std::uint32_t> zeros;
  std::vector<EdgePair> pairs;  //!< (x, y) with x < y in the cube order
};

/*! \brief Enumerates violating pairs by strict-submask iteration (3^n work). */
inline ViolationGraph build_violation_graph(const TruthTable& f) {
  const int n = f.n();
  if (n > 16) throw std::invalid_argument("build_violation_graph: dimension too large");
  ViolationGraph g;
  g.n = n;
  for (std::uint32_t m = 0; m < f.size(); ++m)
    (f.get(m) ? g.ones : g.zeros).push_back(m);
  for (std::uint32_t y : g.zeros) {
    if (y == 0) continue;
    // strict submasks of y, descending
    for (std::uint32_t x = (y - 1) & y;; x = (x - 1) & y) {
      if (f.get(x)) g.pairs.emplace_back(x, y);
      if (x == 0) break;
    }
  }
  return g;
}

/*!
  \brief A set of vertex-disjoint violating pairs with its length
         statistics.  per_dimension[i] counts the pairs whose endpoints
         differ in coordinate i.
*/
struct Matching {
  int n = 0;
  std::vector<EdgePair> pairs;
  std::int64_t total_length = 0;
  Rational avg_length;  //!< r; 0 for the empty matching
  std::vector<std::int64_t> per_dimension;

  std::int64_t size() const { return static_cast<std::int64_t>(pairs.size()); }
};

inline Matching make_matching(int n, std::vector<EdgePair> pairs) {
  Matching m;
  m.n = n;
  m.pairs = std::move(pairs);
  m.per_dimension.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [x, y] : m.pairs) {
    const std::uint32_t diff = x ^ y;
    m.total_length += std::popcount(diff);
    for (int i = 0; i < n; ++i)
      if ((diff >> i) & 1) ++m.per_dimension[static_cast<std::size_t>(i)];
  }
  m.avg_length = m.pairs.empty() ? Rational(0) : Rational(m.total_length, m.pairs.size());
  return m;
}

/*!
  \brief Throws unless every pair is a violation of f and the pairs are
         pairwise vertex-disjoint.
*/
inline void validate_matching(const TruthTable& f, const Matching& m) {
  std::vector<bool> used(f.size(), false);
  for (const auto& [x, y] : m.pairs) {
    if (!dominated_by(x, y) || x == y || !f.get(x) || f.get(y))
      throw std::invalid_argument("validate_matching: pair is not a violation");
    if (used[x] || used[y]) throw std::invalid_argument("validate_matching: pairs overlap");
    used[x] = used[y] = true;
  }
}

/*!
  \brief Maximal (not maximum) matching of violating pairs under a
         seeded random pair order.
*/
inline Matching greedy_maximal_violation_matching(const TruthTable& f, Rng& rng) {
  const ViolationGraph g = build_violation_graph(f);
  std::vector<std::uint32_t> order(g.pairs.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<bool> used(f.size(), false);
  std::vector<EdgePair> picked;
  for (std::uint32_t idx : order) {
    const auto& [x, y] = g.pairs[idx];
    if (!used[x] && !used[y]) {
      used[x] = used[y] = true;
      picked.emplace_back(x, y);
    }
  }
  return make_matching(f.n(), std::move(picked));
}

/*!
  \brief Maximum-cardinality matching of violating pairs minimizing the
         total l1 length; ties broken by the solver's deterministic
         augmentation order.
*/
inline Matching min_length_max_matching(const TruthTable& f) {
  const int n = f.n();
  if (n > 12) throw std::invalid_argument("min_length_max_matching: dimension too large");
  const ViolationGraph g = build_violation_graph(f);
  std::unordered_map<std::uint32_t, int> one_id, zero_id;
  for (std::uint32_t m : g.ones) one_id.emplace(m, static_cast<int>(one_id.size()));
  for (std::uint32_t m : g.zeros) zero_id.emplace(m, static_cast<int>(zero_id.size()));
  MinCostMatcher solver(static_cast<int>(g.ones.size()), static_cast<int>(g.zeros.size()));
  for (const auto& [x, y] : g.pairs)
    solver.add_edge(one_id.at(x), zero_id.at(y), std::popcount(x ^ y));
  const auto res = solver.solve();
  std::vector<EdgePair> picked;
  picked.reserve(static_cast<std::size_t>(res.size));
  for (std::size_t u = 0; u < g.ones.size(); ++u) {
    const int v = res.left_partner[u];
    if (v >= 0) picked.emplace_back(g.ones[u], g.zeros[static_cast<std::size_t>(v)]);
  }
  return make_matching(n, std::move(picked));
}

// ---------------------------------------------------------------------------
// Gamma+: violated-edge matching in the middle layers
// ---------------------------------------------------------------------------

struct GammaPlus {
  Rational value;                 //!< matching size / 2^n
  std::vector<EdgePair> matching; //!< witness
};

/*!
  \brief Largest matching of violated edges whose endpoints both lie in
         the middle layers, divided by 2^n.  The cube is bipartite by
         level parity, so Hopcroft-Karp applies directly.
*/
inline GammaPlus gamma_plus(const TruthTable& f, const TesterParams& params) {
  const int n = f.n();
  if (n > 24) throw std::invalid_argument("gamma_plus: dimension too large");
  if (params.n != n) throw std::invalid_argument("gamma_plus: params dimension mismatch");
  std::vector<EdgePair> candidate;
  for (const auto& [x, y] : violated_edges(f).edges) {
    if (params.in_middle(std::popcount(x)) && params.in_middle(std::popcount(y)))
      candidate.emplace_back(x, y);
  }
  std::unordered_map<std::uint32_t, int> even_id, odd_id;
  for (const auto& [x, y] : candidate) {
    const std::uint32_t even = (std::popcount(x) % 2 == 0) ? x : y;
    const std::uint32_t odd = even == x ? y : x;
    even_id.emplace(even, static_cast<int>(even_id.size()));
    odd_id.emplace(odd, static_cast<int>(odd_id.size()));
  }
  BipartiteMatcher matcher(static_cast<int>(even_id.size()), static_cast<int>(odd_id.size()));
  for (const auto& [x, y] : candidate) {
    const std::uint32_t even = (std::popcount(x) % 2 == 0) ? x : y;
    const std::uint32_t odd = even == x ? y : x;
    matcher.add_edge(even_id.at(even), odd_id.at(odd));
  }
  const int size = matcher.solve();
  // Recover witness edges from the matched (even, odd) id pairs.
  std::unordered_map<std::int64_t, EdgePair> edge_of;
  for (const auto& [x, y] : candidate) {
    const std::uint32_t even = (std::popcount(x) % 2 == 0) ? x : y;
    const std::uint32_t odd = even == x ? y : x;
    edge_of.emplace((static_cast<std::int64_t>(even_id.at(even)) << 32) | odd_id.at(odd),
                    EdgePair{x, y});
  }
  GammaPlus out;
  out.value = Rational(size) / Rational(BigInt(1) << n);
  for (const auto& [v, id] : even_id) {
    const int partner = matcher.left_partner(id);
    if (partner >= 0)
      out.matching.push_back(edge_of.at((static_cast<std::int64_t>(id) << 32) | partner));
  }
  std::sort(out.matching.begin(), out.matching.end());
  return out;
}

// ---------------------------------------------------------------------------
// MetricsReport
// ---------------------------------------------------------------------------

struct MetricsReport {
  int n = 0;
  Rational eps_f;
  Rational phi_plus;
  Rational gamma_plus;
  Rational avg_sensitivity;
  std::optional<Rational> r;  //!< omitted above the matching cap (n > 12)
  std::uint64_t num_ones = 0;
  std::int64_t violated_edge_count = 0;
  std::int64_t gamma_matching_size = 0;
  std::int64_t max_matching_size = 0;   //!< |M| when r is present
  std::int64_t matching_total_length = 0;
  int middle_lo = 0;
  int middle_hi = 0;
};

/*!
  \brief All exact metrics of one function.  Gamma+ uses middle layers
         derived from eps = eps_f (zero distance short-circuits to an
         empty matching).
*/
inline MetricsReport compute_metrics(const TruthTable& f) {
  MetricsReport rep;
  rep.n = f.n();
  rep.num_ones = f.count_ones();
  const auto ve = violated_edges(f);
  rep.violated_edge_count = static_cast<std::int64_t>(ve.edges.size());
  rep.phi_plus = ve.phi_plus;
  rep.avg_sensitivity = average_sensitivity(f);
  rep.eps_f = distance_to_monotonicity(f);
  if (rep.eps_f == 0) {
    rep.gamma_plus = 0;
    rep.middle_lo = 0;
    rep.middle_hi = f.n();
  } else {
    const TesterParams params = make_params(f.n(), to_double(rep.eps_f), 0.5);
    const GammaPlus gp = gamma_plus(f, params);
    rep.gamma_plus = gp.value;
    rep.gamma_matching_size = static_cast<std::int64_t>(gp.matching.size());
    rep.middle_lo = params.i_lo;
    rep.middle_hi = params.i_hi;
  }
  if (f.n() <= 12) {
    const Matching m = min_length_max_matching(f);
    rep.r = m.avg_length;
    rep.max_matching_size = m.size();
    rep.matching_total_length = m.total_length;
  }
  return rep;
}

inline nlohmann::json rational_json(const Rational& r) {
  return nlohmann::json{{"fraction", fraction_string(r)}, {"value", to_double(r)}};
}

inline nlohmann::json to_json(const MetricsReport& rep) {
  nlohmann::json j{
      {"n", rep.n},
      {"eps_f", rational_json(rep.eps_f)},
      {"phi_plus", rational_json(rep.phi_plus)},
      {"gamma_plus", rational_json(rep.gamma_plus)},
      {"avg_sensitivity", rational_json(rep.avg_sensitivity)},
      {"num_ones", rep.num_ones},
      {"violated_edges", rep.violated_edge_count},
      {"gamma_matching_size", rep.gamma_matching_size},
      {"middle_layers", {rep.middle_lo, rep.middle_hi}},
  };
  if (rep.r) {
    j["r"] = rational_json(*rep.r);
    j["max_matching_size"] = rep.max_matching_size;
    j["matching_total_length"] = rep.matching_total_length;
  } else {
    j["r"] = nullptr;
  }
  return j;
}

}  // namespace monotest

/*!
  \file dichotomy.hpp
  \brief Exact verifiers for the violation-structure inequalities: the
         product inequality between violated-edge influence and
         middle-layer edge matchings, its two constituent bounds, the
         vertex-disjoint routing step, and the alternating-sequence
         argument behind the per-dimension bound.

  All comparisons are exact rational arithmetic.  The monotone case
  (eps_f = 0) short-circuits every check as a vacuous pass.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "monotest/exact.hpp"
#include "monotest/hypercube.hpp"
#include "monotest/maxflow.hpp"
#include "monotest/metrics.hpp"
#include "monotest/truth_table.hpp"

namespace monotest {

// ---------------------------------------------------------------------------
// Vertex-disjoint ascending path routing
// ---------------------------------------------------------------------------

/*!
  \brief Same-layer source and sink sets joined by a comparability
         pairing: sources[k] < sinks[k] with all sources at one level
         and all sinks at a higher level.
*/
struct RoutingInstance {
  int n = 0;
  int level_lo = 0;
  int level_hi = 0;
  std::vector<std::uint32_t> sources;
  std::vector<std::uint32_t> sinks;
};

inline void validate_routing_instance(const RoutingInstance& inst) {
  if (inst.n < 1 || inst.n > 16) throw std::invalid_argument("routing: dimension out of range");
  if (inst.level_lo >= inst.level_hi || inst.level_lo < 0 || inst.level_hi > inst.n)
    throw std::invalid_argument("routing: bad levels");
  if (inst.sources.size() != inst.sinks.size() || inst.sources.empty())
    throw std::invalid_argument("routing: source/sink size mismatch");
  std::unordered_set<std::uint32_t> seen;
  for (std::size_t k = 0; k < inst.sources.size(); ++k) {
    const std::uint32_t s = inst.sources[k], r = inst.sinks[k];
    if (std::popcount(s) != inst.level_lo) throw std::invalid_argument("routing: source off layer");
    if (std::popcount(r) != inst.level_hi) throw std::invalid_argument("routing: sink off layer");
    if (!dominated_by(s, r)) throw std::invalid_argument("routing: pair not comparable");
    if (!seen.insert(s).second) throw std::invalid_argument("routing: duplicate source");
  }
  seen.clear();
  for (std::uint32_t r : inst.sinks)
    if (!seen.insert(r).second) throw std::invalid_argument("routing: duplicate sink");
}

struct RoutingResult {
  bool success = false;                   //!< found |sources| disjoint paths
  std::int64_t flow_value = 0;
  std::vector<std::vector<Point>> paths;  //!< ascending, one vertex per level
};

/*!
  \brief Finds a maximum set of vertex-disjoint ascending paths from
         the source set to the sink set (unit vertex capacities between
         the two layers; the pairing need not be respected).

  A full set of |sources| paths always exists for valid instances; a
  smaller flow value would indicate an implementation bug here, and is
  reported rather than masked.
*/
inline RoutingResult lehman_ron_route(const RoutingInstance& inst) {
  validate_routing_instance(inst);
  const int n = inst.n;
  // Dense mask -> node-index table for the levels in play.
  std::vector<std::int32_t> idx(std::size_t{1} << n, -1);
  std::vector<std::uint32_t> verts;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    const int lvl = std::popcount(m);
    if (lvl >= inst.level_lo && lvl <= inst.level_hi) {
      idx[m] = static_cast<std::int32_t>(verts.size());
      verts.push_back(m);
    }
  }
  const int v_count = static_cast<int>(verts.size());
  const int super_s = 2 * v_count;
  const int super_t = super_s + 1;
  MaxFlow net(2 * v_count + 2);
  auto vin = [](std::int32_t i) { return 2 * i; };
  auto vout = [](std::int32_t i) { return 2 * i + 1; };
  // per vertex: (edge id, successor mask) for every ascending arc
  std::vector<std::vector<std::pair<int, std::uint32_t>>> out_arcs(
      static_cast<std::size_t>(v_count));
  for (std::int32_t i = 0; i < v_count; ++i) {
    net.add_edge(vin(i), vout(i), 1);
    const std::uint32_t m = verts[static_cast<std::size_t>(i)];
    if (std::popcount(m) == inst.level_hi) continue;
    for (int b = 0; b < n; ++b) {
      const std::uint32_t up = m | (1u << b);
      if (up == m) continue;
      out_arcs[static_cast<std::size_t>(i)].emplace_back(net.add_edge(vout(i), vin(idx[up]), 1), up);
    }
  }
  for (std::uint32_t s : inst.sources) net.add_edge(super_s, vin(idx[s]), 1);
  for (std::uint32_t r : inst.sinks) net.add_edge(vout(idx[r]), super_t, 1);

  RoutingResult res;
  res.flow_value = net.max_flow(super_s, super_t);
  res.success = res.flow_value == static_cast<std::int64_t>(inst.sources.size());
  if (!res.success) return res;

  // Decompose: each vertex carries at most one unit, so the walk from
  // every source along flow-carrying arcs is unique.
  for (std::uint32_t s : inst.sources) {
    std::vector<Point> path{Point{s, n}};
    std::uint32_t cur = s;
    while (std::popcount(cur) < inst.level_hi) {
      bool advanced = false;
      for (const auto& [eid, next] : out_arcs[static_cast<std::size_t>(idx[cur])]) {
        if (net.flow_on(eid) > 0) {
          cur = next;
          path.push_back(Point{cur, n});
          advanced = true;
          break;
        }
      }
      if (!advanced) {  // cannot happen for a genuine unit flow
        res.success = false;
        res.paths.clear();
        return res;
      }
    }
    res.paths.push_back(std::move(path));
  }
  return res;
}

/*!
  \brief Independent validity check of a routed path set: ascending
         single-bit steps, pairwise vertex-disjoint, and endpoints that
         cover the sources and sinks exactly.  Operates purely on the
         output, never on solver internals.
*/
inline bool verify_disjoint_paths(const RoutingInstance& inst,
                                  const std::vector<std::vector<Point>>& paths) {
  if (paths.size() != inst.sources.size()) return false;
  std::unordered_set<std::uint32_t> visited;
  std::multiset<std::uint32_t> starts, ends;
  for (const auto& path : paths) {
    if (path.empty()) return false;
    if (static_cast<int>(path.size()) != inst.level_hi - inst.level_lo + 1) return false;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Point p = path[k];
      if (p.n != inst.n) return false;
      if (!visited.insert(p.bits).second) return false;
      if (k > 0) {
        const std::uint32_t prev = path[k - 1].bits;
        if (!dominated_by(prev, p.bits) || std::popcount(prev ^ p.bits) != 1) return false;
      }
    }
    starts.insert(path.front().bits);
    ends.insert(path.back().bits);
  }
  std::multiset<std::uint32_t> want_starts(inst.sources.begin(), inst.sources.end());
  std::multiset<std::uint32_t> want_ends(inst.sinks.begin(), inst.sinks.end());
  return starts == want_starts && ends == want_ends;
}

// ---------------------------------------------------------------------------
// Violated-edge matching extraction (routing pipeline)
// ---------------------------------------------------------------------------

/*!
  \brief Outcome of the routed extraction: a matching of violated edges
         inside the middle layers, harvested one edge per disjoint path
         over every level pair of the matching within the length window.
*/
struct ExtractionResult {
  Matching edge_matching;            //!< the extracted matching E
  std::int64_t multiset_size = 0;    //!< |F|, edges harvested before extraction
  std::int64_t instances_routed = 0; //!< level-pair routing instances solved
  std::int64_t paths_found = 0;
  bool routing_all_ok = true;        //!< every instance yielded |M_ij| paths
  bool paths_verified = true;        //!< independent path checks all passed
  bool edges_verified = true;        //!< every harvested edge re-verified violated
  bool bound_holds = true;           //!< |E| >= |M| / (16 r), exact
  std::vector<RoutingInstance> instances;  //!< harvested instances (for audits)
};

/*!
  \brief Runs the level-pair routing construction on a minimum-length
         maximum matching M of violating pairs.

  For every level pair (i, j) inside the middle layers (derived from
  eps = eps_f) with j - i <= 2 r, the pairs of M with endpoints on
  those layers are routed into vertex-disjoint ascending paths; each
  path descends from a one-point to a zero-point and therefore carries
  a violated edge.  One violated edge per path joins the multiset F,
  and a matching E is extracted greedily.  The exact certificate
  |E| >= |M| / (16 r) is evaluated as 16 * total_length(M) * |E| >= |M|^2.
*/
inline ExtractionResult extract_violated_edge_matching(const TruthTable& f, const Matching& m) {
  const int n = f.n();
  if (n > 10) throw std::invalid_argument("extract_violated_edge_matching: dimension too large");
  ExtractionResult out;
  out.edge_matching.n = n;
  out.edge_matching.per_dimension.assign(static_cast<std::size_t>(n), 0);
  if (m.pairs.empty()) return out;

  const Rational eps_f = distance_to_monotonicity(f);
  const TesterParams params = make_params(n, to_double(eps_f), 0.5);

  // Bucket the matching pairs by (lower level, upper level).
  std::map<std::pair<int, int>, std::vector<EdgePair>> buckets;
  for (const auto& [x, y] : m.pairs) {
    const int i = std::popcount(x), j = std::popcount(y);
    buckets[{i, j}].emplace_back(x, y);
  }

  std::vector<EdgePair> multiset_f;
  for (const auto& [levels, pairs] : buckets) {
    const auto [i, j] = levels;
    if (!params.in_middle(i) || !params.in_middle(j)) continue;
    // j - i <= 2r evaluated exactly: (j - i) |M| <= 2 total_length.
    if (static_cast<std::int64_t>(j - i) * m.size() > 2 * m.total_length) continue;
    RoutingInstance inst;
    inst.n = n;
    inst.level_lo = i;
    inst.level_hi = j;
    for (const auto& [x, y] : pairs) {
      inst.sources.push_back(x);
      inst.sinks.push_back(y);
    }
    const RoutingResult routed = lehman_ron_route(inst);
    ++out.instances_routed;
    out.instances.push_back(inst);
    if (!routed.success) {
      out.routing_all_ok = false;
      continue;
    }
    out.paths_found += static_cast<std::int64_t>(routed.paths.size());
    if (!verify_disjoint_paths(inst, routed.paths)) out.paths_verified = false;
    for (const auto& path : routed.paths) {
      // The path starts at a one and ends at a zero; find a 1 -> 0 step.
      bool found = false;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        if (f.get(path[k].bits) && !f.get(path[k + 1].bits)) {
          multiset_f.emplace_back(path[k].bits, path[k + 1].bits);
          found = true;
          break;
        }
      }
      if (!found) out.edges_verified = false;
    }
  }
  out.multiset_size = static_cast<std::int64_t>(multiset_f.size());

  // Greedy extraction in harvest order.
  std::vector<bool> used(f.size(), false);
  std::vector<EdgePair> picked;
  for (const auto& [x, y] : multiset_f) {
    if (!f.get(x) || f.get(y) || std::popcount(x ^ y) != 1) {
      out.edges_verified = false;
      continue;
    }
    if (!used[x] && !used[y]) {
      used[x] = used[y] = true;
      picked.emplace_back(x, y);
    }
  }
  out.edge_matching = make_matching(n, std::move(picked));

  // |E| >= |M| / (16 r)  <=>  16 * total_length * |E| >= |M|^2.
  out.bound_holds =
      16 * m.total_length * out.edge_matching.size() >= m.size() * m.size();
  return out;
}

// ---------------------------------------------------------------------------
// Alternating sequences
// ---------------------------------------------------------------------------

struct AlternatingSequence {
  enum class Terminal { ReachedX, Unmatched, CycleGuard };
  Point origin;
  std::vector<Point> steps;  //!< includes the origin
  Terminal terminal = Terminal::ReachedX;
  bool has_violated_h_edge = false;
};

struct AlternatingReport {
  int dim = 0;
  std::int64_t m_i = 0;  //!< pairs of M crossing this dimension
  std::vector<AlternatingSequence> sequences;
  std::int64_t distinct_violated_h_edges = 0;
  bool all_contain_violated = true;  //!< every sequence holds a violated H-edge
  bool count_ok = true;              //!< distinct violated H-edges >= |M_i|
};

/*!
  \brief Builds the alternating walk from every endpoint of the pairs
         of M crossing dimension i, alternating between the perfect
         matching H of dimension-i edges and M, and checks that each
         walk contains a violated H-edge.

  M must be a maximum-cardinality matching of violating pairs (the
  argument relies on no larger matching existing) and is validated
  before use.
*/
inline AlternatingReport alternating_sequences(const TruthTable& f, const Matching& m, int dim) {
  const int n = f.n();
  if (dim < 0 || dim >= n) throw std::invalid_argument("alternating_sequences: bad dimension");
  validate_matching(f, m);
  {
    // Maximum-cardinality check against an independent matcher.
    const ViolationGraph g = build_violation_graph(f);
    std::unordered_map<std::uint32_t, int> one_id, zero_id;
    for (std::uint32_t v : g.ones) one_id.emplace(v, static_cast<int>(one_id.size()));
    for (std::uint32_t v : g.zeros) zero_id.emplace(v, static_cast<int>(zero_id.size()));
    BipartiteMatcher matcher(static_cast<int>(g.ones.size()), static_cast<int>(g.zeros.size()));
    for (const auto& [x, y] : g.pairs) matcher.add_edge(one_id.at(x), zero_id.at(y));
    if (matcher.solve() != static_cast<int>(m.pairs.size()))
      throw std::invalid_argument("alternating_sequences: matching is not maximum");
  }

  const std::uint32_t hbit = 1u << dim;
  std::unordered_map<std::uint32_t, std::uint32_t> partner;
  for (const auto& [x, y] : m.pairs) {
    partner[x] = y;
    partner[y] = x;
  }
  AlternatingReport rep;
  rep.dim = dim;
  std::vector<std::uint32_t> xset;
  for (const auto& [x, y] : m.pairs) {
    if ((x ^ y) & hbit) {
      xset.push_back(x);
      xset.push_back(y);
    }
  }
  rep.m_i = static_cast<std::int64_t>(xset.size()) / 2;
  std::unordered_set<std::uint32_t> in_x(xset.begin(), xset.end());
  std::set<std::uint32_t> violated_h;  // keyed by lower endpoint

  auto h_edge_violated = [&](std::uint32_t a) {
    const std::uint32_t lower = a & ~hbit, upper = a | hbit;
    return f.get(lower) && !f.get(upper);
  };

  for (std::uint32_t start : xset) {
    AlternatingSequence seq;
    seq.origin = Point{start, n};
    seq.steps.push_back(seq.origin);
    std::unordered_set<std::uint32_t> visited{start};
    std::uint32_t cur = start;
    std::size_t index = 0;
    while (true) {
      std::uint32_t next;
      if (index % 2 == 0) {  // H-step, always defined
        next = cur ^ hbit;
        if (h_edge_violated(cur)) {
          seq.has_violated_h_edge = true;
          violated_h.insert(cur & ~hbit);
        }
      } else {  // M-step, unless the walk has terminated
        if (in_x.contains(cur)) {
          seq.terminal = AlternatingSequence::Terminal::ReachedX;
          break;
        }
        const auto it = partner.find(cur);
        if (it == partner.end()) {
          seq.terminal = AlternatingSequence::Terminal::Unmatched;
          break;
        }
        next = it->second;
      }
      if (visited.contains(next)) {
        seq.terminal = AlternatingSequence::Terminal::CycleGuard;
        break;
      }
      visited.insert(next);
      seq.steps.push_back(Point{next, n});
      cur = next;
      ++index;
    }
    if (!seq.has_violated_h_edge) rep.all_contain_violated = false;
    rep.sequences.push_back(std::move(seq));
  }
  rep.distinct_violated_h_edges = static_cast<std::int64_t>(violated_h.size());
  rep.count_ok = rep.distinct_violated_h_edges >= rep.m_i;
  return rep;
}

/*!
  \brief Diagnostic count of crossing pairs in a matching: (x,y) and
         (x',y') cross when some z sits strictly between both pairs and
         the level intervals strictly cross (neither contains the
         other).

  A minimum-length matching with the strongest tie-break admits no
  crossing pairs; the solver here does not enforce that tie-break, so
  the count is reported for inspection rather than asserted zero.
*/
inline std::int64_t count_crossing_pairs(const Matching& m) {
  std::int64_t crossings = 0;
  for (std::size_t a = 0; a < m.pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < m.pairs.size(); ++b) {
      const auto& [x1, y1] = m.pairs[a];
      const auto& [x2, y2] = m.pairs[b];
      const int lo1 = std::popcount(x1), hi1 = std::popcount(y1);
      const int lo2 = std::popcount(x2), hi2 = std::popcount(y2);
      const bool strict_cross = (lo1 < lo2 && hi1 < hi2 && lo2 <= hi1) ||
                                (lo2 < lo1 && hi2 < hi1 && lo1 <= hi2);
      if (!strict_cross) continue;
      const std::uint32_t join = x1 | x2;
      const std::uint32_t meet = y1 & y2;
      if (!dominated_by(join, meet)) continue;
      // a middle z exists iff some level strictly inside both pairs is
      // reachable between join and meet
      const int z_lo = std::max(std::popcount(join), std::max(lo1, lo2) + 1);
      const int z_hi = std::min(std::popcount(meet), std::min(hi1, hi2) - 1);
      if (z_lo <= z_hi) ++crossings;
    }
  }
  return crossings;
}

// ---------------------------------------------------------------------------
// Per-dimension bound and the product inequality
// ---------------------------------------------------------------------------

struct PerDimensionReport {
  std::vector<std::int64_t> violated_count;  //!< violated edges across each dimension
  std::vector<std::int64_t> m_i;             //!< matching pairs crossing each dimension
  std::vector<bool> pass;
  bool all_pass = true;
};

/*! \brief Violated edges across dimension i must be at least |M_i|, per dimension. */
inline PerDimensionReport per_dimension_check(const TruthTable& f, const Matching& m) {
  PerDimensionReport rep;
  rep.violated_count = violated_edges_per_dimension(f);
  rep.m_i = m.per_dimension;
  rep.pass.resize(static_cast<std::size_t>(f.n()));
  for (std::size_t i = 0; i < rep.pass.size(); ++i) {
    rep.pass[i] = rep.violated_count[i] >= rep.m_i[i];
    if (!rep.pass[i]) rep.all_pass = false;
  }
  return rep;
}

inline PerDimensionReport per_dimension_check(const TruthTable& f) {
  if (f.n() > 12) throw std::invalid_argument("per_dimension_check: dimension too large");
  return per_dimension_check(f, min_length_max_matching(f));
}

struct DichotomyReport {
  int n = 0;
  Rational eps_f;
  Rational phi_plus;
  Rational gamma_plus;
  Rational r;
  Rational product;  //!< phi_plus * gamma_plus
  Rational bound;    //!< eps_f^2 / 32
  bool pass = false;
  bool piece3_pass = false;  //!< gamma_plus >= eps_f / (32 r)
  bool piece4_pass = false;  //!< phi_plus >= r * eps_f
  bool per_dim_pass = false;
};

/*!
  \brief Exact evaluation of the product inequality
         phi_plus * gamma_plus >= eps_f^2 / 32 together with its two
         pieces and the per-dimension bound; vacuous pass at eps_f = 0.
*/
inline DichotomyReport verify_dichotomy(const TruthTable& f) {
  const int n = f.n();
  if (n > 12) throw std::invalid_argument("verify_dichotomy: dimension too large");
  DichotomyReport rep;
  rep.n = n;
  rep.eps_f = distance_to_monotonicity(f);
  rep.phi_plus = violated_edges(f).phi_plus;
  if (rep.eps_f == 0) {
    rep.pass = rep.piece3_pass = rep.piece4_pass = rep.per_dim_pass = true;
    return rep;
  }
  const TesterParams params = make_params(n, to_double(rep.eps_f), 0.5);
  rep.gamma_plus = gamma_plus(f, params).value;
  const Matching m = min_length_max_matching(f);
  rep.r = m.avg_length;
  rep.product = rep.phi_plus * rep.gamma_plus;
  rep.bound = rep.eps_f * rep.eps_f / 32;
  rep.pass = rep.product >= rep.bound;
  rep.piece3_pass = rep.gamma_plus * 32 * rep.r >= rep.eps_f;
  rep.piece4_pass = rep.phi_plus >= rep.r * rep.eps_f;
  rep.per_dim_pass = per_dimension_check(f, m).all_pass;
  return rep;
}

inline nlohmann::json to_json(const DichotomyReport& rep) {
  return nlohmann::json{
      {"n", rep.n},
      {"eps_f", rational_json(rep.eps_f)},
      {"phi_plus", rational_json(rep.phi_plus)},
      {"gamma_plus", rational_json(rep.gamma_plus)},
      {"r", rational_json(rep.r)},
      {"product", rational_json(rep.product)},
      {"bound", rational_json(rep.bound)},
      {"pass", rep.pass},
      {"piece3_pass", rep.piece3_pass},
      {"piece4_pass", rep.piece4_pass},
      {"per_dim_pass", rep.per_dim_pass},
  };
}

}  // namespace monotest

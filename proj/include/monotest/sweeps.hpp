/*!
  \file sweeps.hpp
  \brief Seeded experiment runners: rejection-rate estimation and the
         verification sweeps, with deterministic CSV/JSON output.

  Trial t of an experiment always runs on the stream seeded with
  derive_seed(master, t); sweep rows are merged in instance order, so
  output bytes never depend on scheduling.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "monotest/blue.hpp"
#include "monotest/dichotomy.hpp"
#include "monotest/metrics.hpp"
#include "monotest/oracle.hpp"
#include "monotest/pair_prob.hpp"
#include "monotest/parallel.hpp"
#include "monotest/stats.hpp"
#include "monotest/testers.hpp"
#include "monotest/truth_table.hpp"

namespace monotest {

// ---------------------------------------------------------------------------
// Deterministic text formatting
// ---------------------------------------------------------------------------

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

//! One CSV line, LF-terminated.
inline void csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Function sources
// ---------------------------------------------------------------------------

/*!
  \brief Builds a named family member: "constant:b", "dictator:i",
         "anti_dictator:i", "majority", "anti_majority", "two_block"
         (domain dimension n+1), "random", "random_monotone" (seeded).
*/
inline TruthTable make_family(const std::string& family, int n, std::uint64_t seed) {
  const auto colon = family.find(':');
  const std::string name = family.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : family.substr(colon + 1);
  auto int_arg = [&](const char* what) {
    if (arg.empty()) throw std::invalid_argument(std::string(what) + ": missing argument");
    return std::stoi(arg);
  };
  if (name == "constant") return constant(n, int_arg("constant") != 0);
  if (name == "dictator") return dictator(n, int_arg("dictator"));
  if (name == "anti_dictator") return anti_dictator(n, int_arg("anti_dictator"));
  if (name == "majority") return majority(n);
  if (name == "anti_majority") return anti_majority(n);
  if (name == "two_block") return two_block_example(n);
  if (name == "random") return random_function(n, seed);
  if (name == "random_monotone") return random_monotone(n, seed);
  throw std::invalid_argument("unknown family: " + name);
}

// ---------------------------------------------------------------------------
// Rejection-rate estimation
// ---------------------------------------------------------------------------

enum class TesterKind { Edge, Path, Combined, Sensitivity };

inline TesterKind tester_kind_from_string(const std::string& s) {
  if (s == "edge") return TesterKind::Edge;
  if (s == "path") return TesterKind::Path;
  if (s == "combined") return TesterKind::Combined;
  if (s == "sensitivity") return TesterKind::Sensitivity;
  throw std::invalid_argument("unknown tester: " + s);
}

struct EstimateSpec {
  TesterKind kind = TesterKind::Edge;
  double eps = 0.5;
  double sigma = 0.25;            //!< path tester only
  double budget_constant = 200;   //!< combined / sensitivity
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
};

struct EstimateResult {
  double estimate = 0;
  Interval interval;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  std::uint64_t queries_total = 0;
  double mean_queries = 0;
};

/*!
  \brief Runs the designated tester once per trial with derived seeds;
         returns the rejection frequency with a Wilson 95% interval.
*/
inline EstimateResult estimate_rejection(const TruthTable& f, const EstimateSpec& spec) {
  if (spec.trials == 0) throw std::invalid_argument("estimate_rejection: zero trials");
  std::optional<TesterParams> params;
  if (spec.kind == TesterKind::Path) params = make_params(f.n(), spec.eps, spec.sigma);
  std::optional<Rational> sens;
  if (spec.kind == TesterKind::Sensitivity) sens = average_sensitivity(f);

  std::vector<std::uint8_t> rejected(spec.trials, 0);
  std::vector<std::uint64_t> queries(spec.trials, 0);
  parallel_for(
      spec.trials,
      [&](std::uint64_t t) {
        QueryOracle oracle(f.n(), [&f](Point p) { return f.get(p.bits); });
        const std::uint64_t seed = derive_seed(spec.master_seed, t);
        switch (spec.kind) {
          case TesterKind::Edge: {
            Rng rng(seed);
            const Verdict v = edge_test_once(oracle, rng);
            rejected[t] = v.rejected;
            queries[t] = v.queries_used;
            break;
          }
          case TesterKind::Path: {
            Rng rng(seed);
            const Verdict v = path_test_once(oracle, *params, rng);
            rejected[t] = v.rejected;
            queries[t] = v.queries_used;
            break;
          }
          case TesterKind::Combined: {
            const TesterRun run = combined_test(oracle, spec.eps, spec.budget_constant, seed);
            rejected[t] = run.verdict.rejected;
            queries[t] = run.verdict.queries_used;
            break;
          }
          case TesterKind::Sensitivity: {
            const TesterRun run = sensitivity_test(oracle, spec.eps, to_double(*sens),
                                                   spec.budget_constant, seed);
            rejected[t] = run.verdict.rejected;
            queries[t] = run.verdict.queries_used;
            break;
          }
        }
      },
      spec.threads);

  EstimateResult res;
  res.trials = spec.trials;
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    res.rejections += rejected[t];
    res.queries_total += queries[t];
  }
  res.estimate = static_cast<double>(res.rejections) / static_cast<double>(spec.trials);
  res.interval = wilson_interval(res.rejections, res.trials);
  res.mean_queries = static_cast<double>(res.queries_total) / static_cast<double>(spec.trials);
  return res;
}

inline nlohmann::json to_json(const EstimateResult& r) {
  return nlohmann::json{
      {"estimate", r.estimate},
      {"wilson_lo", r.interval.lo},
      {"wilson_hi", r.interval.hi},
      {"trials", r.trials},
      {"rejections", r.rejections},
      {"queries_total", r.queries_total},
      {"mean_queries", r.mean_queries},
  };
}

// ---------------------------------------------------------------------------
// Dichotomy sweep
// ---------------------------------------------------------------------------

struct DichotomySweepRow {
  std::string id;
  DichotomyReport report;
};

struct DichotomySweep {
  std::vector<DichotomySweepRow> rows;
  bool all_pass = true;
};

inline void sweep_note_row(DichotomySweep& sweep, std::string id, DichotomyReport rep) {
  if (!(rep.pass && rep.piece3_pass && rep.piece4_pass && rep.per_dim_pass))
    sweep.all_pass = false;
  sweep.rows.push_back({std::move(id), std::move(rep)});
}

/*! \brief Every function on n variables (n <= 4), checked exactly. */
inline DichotomySweep dichotomy_sweep_exhaustive(int n, unsigned threads = 0) {
  if (n > 4) throw std::invalid_argument("dichotomy_sweep_exhaustive: use random sweeps above n=4");
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
  DichotomySweep sweep;
  std::vector<DichotomyReport> reports(total);
  parallel_for(
      total, [&](std::uint64_t bits) { reports[bits] = verify_dichotomy(table_from_bits(n, bits)); },
      threads);
  sweep.rows.reserve(total);
  char idbuf[24];
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::snprintf(idbuf, sizeof idbuf, "0x%llx", static_cast<unsigned long long>(bits));
    sweep_note_row(sweep, idbuf, std::move(reports[bits]));
  }
  return sweep;
}

/*! \brief Seeded random functions, one row each. */
inline DichotomySweep dichotomy_sweep_random(int n, std::uint64_t trials, std::uint64_t master_seed,
                                             unsigned threads = 0) {
  DichotomySweep sweep;
  std::vector<DichotomyReport> reports(trials);
  parallel_for(
      trials,
      [&](std::uint64_t t) {
        reports[t] = verify_dichotomy(random_function(n, derive_seed(master_seed, t)));
      },
      threads);
  sweep.rows.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t)
    sweep_note_row(sweep, "seed:" + std::to_string(derive_seed(master_seed, t)),
                   std::move(reports[t]));
  return sweep;
}

inline nlohmann::json dichotomy_sweep_json(const DichotomySweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    auto j = to_json(row.report);
    j["id"] = row.id;
    rows.push_back(std::move(j));
  }
  return rows;
}

inline std::string dichotomy_sweep_csv(const DichotomySweep& sweep) {
  std::string out;
  csv_row(out, {"id", "n", "eps_f", "phi_plus", "gamma_plus", "r", "product", "bound", "pass",
                "piece3_pass", "piece4_pass", "per_dim_pass"});
  for (const auto& row : sweep.rows) {
    const DichotomyReport& r = row.report;
    csv_row(out, {row.id, std::to_string(r.n), fraction_string(r.eps_f),
                  fraction_string(r.phi_plus), fraction_string(r.gamma_plus),
                  fraction_string(r.r), fraction_string(r.product), fraction_string(r.bound),
                  r.pass ? "1" : "0", r.piece3_pass ? "1" : "0", r.piece4_pass ? "1" : "0",
                  r.per_dim_pass ? "1" : "0"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma / routing / alternating sweep
// ---------------------------------------------------------------------------

/*!
  \brief Per-function verdicts of the constructive machinery on one
         random far-from-monotone function.
*/
struct LemmaSweepRow {
  std::string id;
  int n = 0;
  Rational eps_f;
  std::int64_t matching_size = 0;
  std::int64_t total_length = 0;
  Rational r;
  std::int64_t multiset_size = 0;
  std::int64_t extracted_size = 0;
  std::int64_t routing_instances = 0;
  std::int64_t crossing_pairs = 0;   //!< diagnostic only, not asserted
  bool extraction_bound = true;  //!< |E| >= |M| / 16r
  bool violated_lower = true;    //!< violated edges >= r eps 2^(n-1)
  bool per_dim = true;
  bool alternating_all = true;   //!< each sequence holds a violated H-edge
  bool alternating_count = true; //!< distinct violated H-edges >= |M_i|
  bool routing_ok = true;
  bool paths_verified = true;
};

struct LemmaSweep {
  std::vector<LemmaSweepRow> rows;
  bool all_pass = true;
  std::int64_t instances_total = 0;
  std::int64_t instances_ok = 0;
};

/*!
  \brief Checks one function end to end; monotone inputs produce a
         vacuous row.
*/
inline LemmaSweepRow lemma_check_function(const TruthTable& f, std::string id) {
  LemmaSweepRow row;
  row.id = std::move(id);
  row.n = f.n();
  row.eps_f = distance_to_monotonicity(f);
  if (row.eps_f == 0) return row;
  const Matching m = min_length_max_matching(f);
  row.matching_size = m.size();
  row.total_length = m.total_length;
  row.r = m.avg_length;
  row.crossing_pairs = count_crossing_pairs(m);

  const ExtractionResult ex = extract_violated_edge_matching(f, m);
  row.multiset_size = ex.multiset_size;
  row.extracted_size = ex.edge_matching.size();
  row.routing_instances = ex.instances_routed;
  row.extraction_bound = ex.bound_holds && ex.edges_verified;
  row.routing_ok = ex.routing_all_ok;
  row.paths_verified = ex.paths_verified;

  // violated edges >= r eps 2^(n-1), exactly
  const auto ve = violated_edges(f);
  const Rational lhs(ve.edges.size());
  const Rational rhs = row.r * row.eps_f * Rational(BigInt(1) << (f.n() - 1));
  row.violated_lower = lhs >= rhs;

  row.per_dim = per_dimension_check(f, m).all_pass;

  for (int i = 0; i < f.n(); ++i) {
    if (m.per_dimension[static_cast<std::size_t>(i)] == 0) continue;
    const AlternatingReport alt = alternating_sequences(f, m, i);
    if (!alt.all_contain_violated) row.alternating_all = false;
    if (!alt.count_ok) row.alternating_count = false;
  }
  return row;
}

inline bool lemma_row_pass(const LemmaSweepRow& row) {
  return row.extraction_bound && row.violated_lower && row.per_dim && row.alternating_all &&
         row.alternating_count && row.routing_ok && row.paths_verified;
}

inline LemmaSweep lemma_sweep_random(int n, std::uint64_t trials, std::uint64_t master_seed,
                                     unsigned threads = 0) {
  LemmaSweep sweep;
  std::vector<LemmaSweepRow> rows(trials);
  parallel_for(
      trials,
      [&](std::uint64_t t) {
        const std::uint64_t seed = derive_seed(master_seed, t);
        rows[t] = lemma_check_function(random_function(n, seed), "seed:" + std::to_string(seed));
      },
      threads);
  for (auto& row : rows) {
    if (!lemma_row_pass(row)) sweep.all_pass = false;
    sweep.instances_total += row.routing_instances;
    if (row.routing_ok) sweep.instances_ok += row.routing_instances;
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

inline nlohmann::json lemma_sweep_json(const LemmaSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back(nlohmann::json{{"id", row.id},
                                  {"n", row.n},
                                  {"eps_f", rational_json(row.eps_f)},
                                  {"matching_size", row.matching_size},
                                  {"total_length", row.total_length},
                                  {"r", rational_json(row.r)},
                                  {"multiset_size", row.multiset_size},
                                  {"extracted_size", row.extracted_size},
                                  {"routing_instances", row.routing_instances},
                                  {"crossing_pairs", row.crossing_pairs},
                                  {"extraction_bound", row.extraction_bound},
                                  {"violated_lower", row.violated_lower},
                                  {"per_dim", row.per_dim},
                                  {"alternating_all", row.alternating_all},
                                  {"alternating_count", row.alternating_count},
                                  {"routing_ok", row.routing_ok},
                                  {"paths_verified", row.paths_verified}});
  }
  return rows;
}

inline std::string lemma_sweep_csv(const LemmaSweep& sweep) {
  std::string out;
  csv_row(out, {"id", "n", "eps_f", "matching_size", "total_length", "r", "multiset_size",
                "extracted_size", "routing_instances", "crossing_pairs", "extraction_bound",
                "violated_lower", "per_dim", "alternating_all", "alternating_count",
                "routing_ok", "paths_verified"});
  for (const auto& row : sweep.rows) {
    csv_row(out, {row.id, std::to_string(row.n), fraction_string(row.eps_f),
                  std::to_string(row.matching_size), std::to_string(row.total_length),
                  fraction_string(row.r), std::to_string(row.multiset_size),
                  std::to_string(row.extracted_size), std::to_string(row.routing_instances),
                  std::to_string(row.crossing_pairs),
                  row.extraction_bound ? "1" : "0", row.violated_lower ? "1" : "0",
                  row.per_dim ? "1" : "0", row.alternating_all ? "1" : "0",
                  row.alternating_count ? "1" : "0", row.routing_ok ? "1" : "0",
                  row.paths_verified ? "1" : "0"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Blue sweep
// ---------------------------------------------------------------------------

struct BlueSweepRow {
  std::string id;
  int n = 0;
  double eps = 0;
  double sigma = 0;
  std::uint64_t blue_size = 0;
  BlueChainReport report;
};

struct BlueSweep {
  std::vector<BlueSweepRow> rows;
  bool all_pass = true;
};

inline BlueSweep blue_sweep(int n, double eps, const std::vector<double>& sigmas,
                            std::uint64_t instances_per_sigma, std::uint64_t master_seed,
                            unsigned threads = 0) {
  BlueSweep sweep;
  const std::uint64_t total = sigmas.size() * instances_per_sigma;
  std::vector<BlueSweepRow> rows(total);
  parallel_for(
      total,
      [&](std::uint64_t k) {
        const double sigma = sigmas[k / instances_per_sigma];
        const std::uint64_t seed = derive_seed(master_seed, k);
        const TesterParams params = make_params(n, eps, sigma);
        Rng rng(seed);
        const BlueInstance inst = random_blue_instance(params, sigma, rng);
        BlueSweepRow row;
        row.id = "seed:" + std::to_string(seed);
        row.n = n;
        row.eps = eps;
        row.sigma = sigma;
        row.blue_size = inst.blue.size();
        row.report = check_blue_chain(inst);
        rows[k] = std::move(row);
      },
      threads);
  for (auto& row : rows) {
    if (!row.report.pass) sweep.all_pass = false;
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

inline nlohmann::json blue_sweep_json(const BlueSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back(nlohmann::json{{"id", row.id},
                                  {"n", row.n},
                                  {"eps", row.eps},
                                  {"sigma", row.sigma},
                                  {"blue_size", row.blue_size},
                                  {"exact_prob", rational_json(row.report.prob)},
                                  {"expected_fraction", rational_json(row.report.expected)},
                                  {"bound", rational_json(row.report.rhs)},
                                  {"pass", row.report.pass}});
  }
  return rows;
}

inline std::string blue_sweep_csv(const BlueSweep& sweep) {
  std::string out;
  csv_row(out, {"id", "n", "eps", "sigma", "blue_size", "exact_prob", "bound", "pass"});
  for (const auto& row : sweep.rows) {
    csv_row(out, {row.id, std::to_string(row.n), format_double(row.eps),
                  format_double(row.sigma), std::to_string(row.blue_size),
                  fraction_string(row.report.prob), fraction_string(row.report.rhs),
                  row.report.pass ? "1" : "0"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair-probability validation sweep
// ---------------------------------------------------------------------------

struct PairProbRow {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  Rational exact;
  std::uint64_t count = 0;
  double z = 0;  //!< |frequency - exact| in standard errors
  bool checked = false;
  bool pass = true;
};

struct PairProbSweep {
  std::vector<PairProbRow> rows;
  Rational exact_sum;
  std::uint64_t draws = 0;
  double max_z = 0;
  bool sum_ok = false;
  bool all_pass = true;
};

/*!
  \brief Monte Carlo validation of the exact outcome distribution:
         every outcome with exact probability >= min_prob must land
         within 4 standard errors over the given number of draws.
*/
inline PairProbSweep pairprob_sweep(int n, double eps, double sigma, std::uint64_t draws,
                                    std::uint64_t master_seed, double min_prob = 1e-4,
                                    unsigned threads = 0) {
  if (n > 12) throw std::invalid_argument("pairprob_sweep: dimension too large");
  const TesterParams params = make_params(n, eps, sigma);
  PairProbSweep sweep;
  sweep.draws = draws;

  // Exact distribution over unordered outcomes, keyed (min, max).
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> exact;
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << n); ++y) {
    const Point py{y, n};
    const auto self = pair_prob(py, py, params);
    if (self.prob != 0) exact[{y, y}] = self.prob;
    if (y == 0) continue;
    for (std::uint32_t x = (y - 1) & y;; x = (x - 1) & y) {
      const auto pp = pair_prob(Point{x, n}, py, params);
      if (pp.prob != 0) exact[{x, y}] = pp.prob;
      if (x == 0) break;
    }
  }
  sweep.exact_sum = 0;
  for (const auto& [key, p] : exact) sweep.exact_sum += p;
  sweep.sum_ok = sweep.exact_sum == 1;

  // Monte Carlo draws, chunked; counts are additive so merging is
  // order-independent.
  const std::uint64_t chunk = 4096;
  const std::uint64_t num_chunks = (draws + chunk - 1) / chunk;
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> chunk_counts(num_chunks);
  parallel_for(
      num_chunks,
      [&](std::uint64_t c) {
        auto& counts = chunk_counts[c];
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(draws, begin + chunk);
        for (std::uint64_t t = begin; t < end; ++t) {
          Rng rng(derive_seed(master_seed, t));
          const PathSample path = sample_path(n, rng);
          const std::vector<Point> xs = middle_points(path, params);
          const Point x = xs[static_cast<std::size_t>(rng.uniform_below(xs.size()))];
          const std::vector<Point> ys = y_set(xs, x, params);
          const Point y = ys[static_cast<std::size_t>(rng.uniform_below(ys.size()))];
          const std::uint64_t key =
              (static_cast<std::uint64_t>(std::min(x.bits, y.bits)) << 32) |
              std::max(x.bits, y.bits);
          ++counts[key];
        }
      },
      threads);
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (const auto& c : chunk_counts)
    for (const auto& [key, v] : c) counts[key] += v;

  for (const auto& [key, p] : exact) {
    PairProbRow row;
    row.x = key.first;
    row.y = key.second;
    row.exact = p;
    const std::uint64_t packed = (static_cast<std::uint64_t>(key.first) << 32) | key.second;
    const auto it = counts.find(packed);
    row.count = it == counts.end() ? 0 : it->second;
    const double pd = to_double(p);
    const double freq = static_cast<double>(row.count) / static_cast<double>(draws);
    const double se = std::sqrt(pd * (1.0 - pd) / static_cast<double>(draws));
    row.z = se > 0 ? std::abs(freq - pd) / se : 0.0;
    row.checked = pd >= min_prob;
    row.pass = !row.checked || row.z <= 4.0;
    if (row.checked) sweep.max_z = std::max(sweep.max_z, row.z);
    if (!row.pass) sweep.all_pass = false;
    counts.erase(packed);
    sweep.rows.push_back(std::move(row));
  }
  // Any observed outcome missing from the exact support is a failure.
  if (!counts.empty()) sweep.all_pass = false;
  if (!sweep.sum_ok) sweep.all_pass = false;
  return sweep;
}

inline nlohmann::json pairprob_sweep_json(const PairProbSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back(nlohmann::json{{"x", row.x},
                                  {"y", row.y},
                                  {"exact", rational_json(row.exact)},
                                  {"count", row.count},
                                  {"z", row.z},
                                  {"checked", row.checked},
                                  {"pass", row.pass}});
  }
  return nlohmann::json{{"draws", sweep.draws},
                        {"sum_ok", sweep.sum_ok},
                        {"max_z", sweep.max_z},
                        {"all_pass", sweep.all_pass},
                        {"rows", std::move(rows)}};
}

inline std::string pairprob_sweep_csv(const PairProbSweep& sweep) {
  std::string out;
  csv_row(out, {"x", "y", "exact", "count", "z", "checked", "pass"});
  for (const auto& row : sweep.rows) {
    csv_row(out, {std::to_string(row.x), std::to_string(row.y), fraction_string(row.exact),
                  std::to_string(row.count), format_double(row.z), row.checked ? "1" : "0",
                  row.pass ? "1" : "0"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Routing sweep
// ---------------------------------------------------------------------------

struct RoutingSweepRow {
  std::string id;
  int level_lo = 0;
  int level_hi = 0;
  std::int64_t pairs = 0;
  std::int64_t flow = 0;
  bool ok = false;
  bool verified = false;
};

struct RoutingSweep {
  std::vector<RoutingSweepRow> rows;
  bool all_pass = true;
};

/*!
  \brief Harvests routing instances from the level-pair decomposition
         of minimum-length matchings of random functions and routes
         each one, re-verifying every path set independently.
*/
inline RoutingSweep routing_sweep(int n, std::uint64_t functions, std::uint64_t master_seed,
                                  unsigned threads = 0) {
  RoutingSweep sweep;
  std::vector<std::vector<RoutingSweepRow>> rows(functions);
  parallel_for(
      functions,
      [&](std::uint64_t t) {
        const std::uint64_t seed = derive_seed(master_seed, t);
        const TruthTable f = random_function(n, seed);
        if (distance_to_monotonicity(f) == 0) return;
        const Matching m = min_length_max_matching(f);
        if (m.pairs.empty()) return;
        const ExtractionResult ex = extract_violated_edge_matching(f, m);
        for (const RoutingInstance& inst : ex.instances) {
          const RoutingResult routed = lehman_ron_route(inst);
          RoutingSweepRow row;
          row.id = "seed:" + std::to_string(seed);
          row.level_lo = inst.level_lo;
          row.level_hi = inst.level_hi;
          row.pairs = static_cast<std::int64_t>(inst.sources.size());
          row.flow = routed.flow_value;
          row.ok = routed.success;
          row.verified = routed.success && verify_disjoint_paths(inst, routed.paths);
          rows[t].push_back(std::move(row));
        }
      },
      threads);
  for (auto& fn_rows : rows) {
    for (auto& row : fn_rows) {
      if (!(row.ok && row.verified)) sweep.all_pass = false;
      sweep.rows.push_back(std::move(row));
    }
  }
  return sweep;
}

inline nlohmann::json routing_sweep_json(const RoutingSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back(nlohmann::json{{"id", row.id},
                                  {"level_lo", row.level_lo},
                                  {"level_hi", row.level_hi},
                                  {"pairs", row.pairs},
                                  {"flow", row.flow},
                                  {"ok", row.ok},
                                  {"verified", row.verified}});
  }
  return rows;
}

inline std::string routing_sweep_csv(const RoutingSweep& sweep) {
  std::string out;
  csv_row(out, {"id", "level_lo", "level_hi", "pairs", "flow", "ok", "verified"});
  for (const auto& row : sweep.rows) {
    csv_row(out, {row.id, std::to_string(row.level_lo), std::to_string(row.level_hi),
                  std::to_string(row.pairs), std::to_string(row.flow), row.ok ? "1" : "0",
                  row.verified ? "1" : "0"});
  }
  return out;
}

}  // namespace monotest

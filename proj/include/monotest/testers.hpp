/*!
  \file testers.hpp
  \brief The probabilistic monotonicity testers: edge tester, path
         tester, and the combined tester with repetition budgets.

  All testers are one-sided (a monotone function is never rejected) and
  non-adaptive (queried points depend only on the randomness stream,
  never on oracle answers).  A rejection always carries a witness pair
  that independently re-verifies as a violation.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monotest/hypercube.hpp"
#include "monotest/oracle.hpp"
#include "monotest/rng.hpp"

namespace monotest {

struct Witness {
  Point x;  //!< lower point, f(x) = 1
  Point y;  //!< upper point, f(y) = 0
  bool fx = true;
  bool fy = false;
};

struct Verdict {
  bool rejected = false;
  std::optional<Witness> witness;
  std::uint64_t queries_used = 0;
};

namespace detail {

//! Orients a queried pair along the cube order and reports a violation.
inline std::optional<Witness> check_pair(Point a, bool fa, Point b, bool fb) {
  if (precedes(a, b) && fa && !fb) return Witness{a, b, fa, fb};
  if (precedes(b, a) && fb && !fa) return Witness{b, a, fb, fa};
  return std::nullopt;
}

}  // namespace detail

/*!
  \brief One edge-tester draw: a uniformly random hypercube edge,
         rejected iff its endpoints violate monotonicity.

  The rejection probability is exactly (violated edges) / (n 2^(n-1)),
  i.e. Phi+ / n.
*/
inline Verdict edge_test_once(QueryOracle& oracle, Rng& rng) {
  const int n = oracle.n();
  const std::uint32_t m = static_cast<std::uint32_t>(rng.uniform_below(std::uint64_t{1} << n));
  const int i = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
  const Point lower{m & ~(1u << i), n};
  const Point upper{m | (1u << i), n};
  Verdict v;
  const bool flo = oracle.evaluate(lower);
  const bool fhi = oracle.evaluate(upper);
  v.queries_used = 2;
  if (flo && !fhi) {
    v.rejected = true;
    v.witness = Witness{lower, upper, flo, fhi};
  }
  return v;
}

/*!
  \brief One path-tester draw: a uniform end-to-end path, a uniform
         first point in its middle window, a uniform second point among
         those far enough along the same path.

  Queries only the two sampled points (one query when they coincide,
  which can happen only for tau <= 0; the same-point outcome is never a
  violation).
*/
inline Verdict path_test_once(QueryOracle& oracle, const TesterParams& params, Rng& rng) {
  if (oracle.n() != params.n) throw std::invalid_argument("path_test_once: dimension mismatch");
  const PathSample path = sample_path(params.n, rng);
  const std::vector<Point> xs = middle_points(path, params);
  const Point x = xs[static_cast<std::size_t>(rng.uniform_below(xs.size()))];
  const std::vector<Point> ys = y_set(xs, x, params);
  const Point y = ys[static_cast<std::size_t>(rng.uniform_below(ys.size()))];
  Verdict v;
  const bool fx = oracle.evaluate(x);
  if (x == y) {
    v.queries_used = 1;
    return v;
  }
  const bool fy = oracle.evaluate(y);
  v.queries_used = 2;
  if (auto w = detail::check_pair(x, fx, y, fy)) {
    v.rejected = true;
    v.witness = w;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Combined tester
// ---------------------------------------------------------------------------

struct CombinedConfig {
  int n = 0;
  double eps = 0;
  double budget_constant = 0;
  bool edge_only = false;          //!< eps below n^(-1/4): the edge tester alone suffices
  double sigma = 0;                //!< n^(-1/8) sqrt(eps) / 32 when the path tester is active
  std::uint64_t repetitions = 0;
  std::optional<TesterParams> params;
};

inline CombinedConfig make_combined_config(int n, double eps, double budget_constant) {
  if (!(eps > 0.0) || eps > 0.5) throw std::invalid_argument("combined tester: eps outside (0, 1/2]");
  if (!(budget_constant > 0.0)) throw std::invalid_argument("combined tester: nonpositive budget");
  CombinedConfig cfg;
  cfg.n = n;
  cfg.eps = eps;
  cfg.budget_constant = budget_constant;
  if (eps < std::pow(n, -0.25)) {
    cfg.edge_only = true;
    cfg.repetitions = static_cast<std::uint64_t>(std::ceil(budget_constant * n / eps));
  } else {
    cfg.sigma = std::pow(n, -0.125) * std::sqrt(eps) / 32.0;
    cfg.params = make_params(n, eps, cfg.sigma);
    cfg.repetitions = static_cast<std::uint64_t>(
        std::ceil(budget_constant * std::pow(n, 7.0 / 8.0) * std::pow(eps, -1.5) *
                  std::log(1.0 / eps)));
  }
  return cfg;
}

/*!
  \brief One round of the combined tester: a fair coin (consumed first,
         from the same stream) picks the edge tester or the path tester.
*/
inline Verdict combined_round(QueryOracle& oracle, const CombinedConfig& cfg, Rng& rng) {
  if (cfg.edge_only) return edge_test_once(oracle, rng);
  const bool use_edge = rng.uniform_below(2) == 0;
  return use_edge ? edge_test_once(oracle, rng) : path_test_once(oracle, *cfg.params, rng);
}

struct TesterRun {
  double eps = 0;
  double sigma = 0;
  double budget_constant = 0;
  std::uint64_t repetitions = 0;      //!< planned rounds
  std::uint64_t rounds_executed = 0;  //!< actual rounds (early exit on rejection)
  std::uint64_t seed = 0;
  bool edge_only = false;
  Verdict verdict;
};

/*!
  \brief The full tester: repeats combined rounds, stopping at the
         first violation found.  For eps below n^(-1/4) it degenerates
         to repeated edge testing.
*/
inline TesterRun combined_test(QueryOracle& oracle, double eps, double budget_constant,
                               std::uint64_t seed) {
  const CombinedConfig cfg = make_combined_config(oracle.n(), eps, budget_constant);
  TesterRun run;
  run.eps = eps;
  run.sigma = cfg.sigma;
  run.budget_constant = budget_constant;
  run.repetitions = cfg.repetitions;
  run.seed = seed;
  run.edge_only = cfg.edge_only;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < cfg.repetitions; ++t) {
    Verdict v = combined_round(oracle, cfg, rng);
    run.verdict.queries_used += v.queries_used;
    ++run.rounds_executed;
    if (v.rejected) {
      run.verdict.rejected = true;
      run.verdict.witness = v.witness;
      break;
    }
  }
  return run;
}

/*!
  \brief Path-tester-only schedule tuned by the function's average
         sensitivity: sigma = eps^2 / (32 I(f)) and
         T = ceil(budget n^(1/2) eps^(-6) I(f)^3 ln(1/eps)) rounds.
*/
inline TesterRun sensitivity_test(QueryOracle& oracle, double eps, double avg_sensitivity,
                                  double budget_constant, std::uint64_t seed) {
  if (!(avg_sensitivity > 0.0))
    throw std::invalid_argument("sensitivity_test: nonpositive average sensitivity");
  if (!(eps > 0.0) || eps > 0.5) throw std::invalid_argument("sensitivity_test: eps outside (0, 1/2]");
  const int n = oracle.n();
  const double sigma = std::min(1.0, eps * eps / (32.0 * avg_sensitivity));
  const TesterParams params = make_params(n, eps, sigma);
  TesterRun run;
  run.eps = eps;
  run.sigma = sigma;
  run.budget_constant = budget_constant;
  run.seed = seed;
  run.repetitions = static_cast<std::uint64_t>(
      std::ceil(budget_constant * std::sqrt(static_cast<double>(n)) * std::pow(eps, -6.0) *
                std::pow(avg_sensitivity, 3.0) * std::log(1.0 / eps)));
  Rng rng(seed);
  for (std::uint64_t t = 0; t < run.repetitions; ++t) {
    Verdict v = path_test_once(oracle, params, rng);
    run.verdict.queries_used += v.queries_used;
    ++run.rounds_executed;
    if (v.rejected) {
      run.verdict.rejected = true;
      run.verdict.witness = v.witness;
      break;
    }
  }
  return run;
}

}  // namespace monotest

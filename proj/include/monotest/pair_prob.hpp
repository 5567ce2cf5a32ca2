/*!
  \file pair_prob.hpp
  \brief Exact probability that one tester draw yields a given pair.

  One draw samples a uniform path p, then x uniform in X_p, then y
  uniform in Y_p(x).  The first pick is uniform over the actual middle
  window |X_p| (the only normalization under which the outcome
  probabilities form a genuine distribution), and the returned values
  are exact rationals.
*/

#pragma once

#include <cmath>
#include <cstdint>

#include "monotest/exact.hpp"
#include "monotest/hypercube.hpp"

namespace monotest {

/*!
  \brief Number of 0^n -> 1^n paths through a fixed comparable pair
         x < y with |x| = t and level gap u: t! u! (n-u-t)!.
*/
inline BigInt count_paths_through_pair(int t, int u, int n) {
  if (t < 0 || u < 1 || t + u > n) throw std::invalid_argument("count_paths_through_pair: bad levels");
  return factorial(t) * factorial(u) * factorial(n - u - t);
}

struct PairProbability {
  Point x;
  Point y;
  Rational prob;      //!< exact probability of the unordered outcome {x, y}
  double theta = 0;   //!< per-path pick probability (1/|X_p|)(1/s(x) + 1/s(y)); halved for x = y
  BigInt path_count;  //!< number of full paths through both points
};

/*!
  \brief Exact probability, by levels alone, that one draw picks an
         unordered pair whose lower point sits at level t with gap u
         (u = 0 for the same-point outcome).

  Valid for any specific comparable pair with those levels; pairs that
  are incomparable or outside the middle window have probability zero
  and are not handled here.
*/
inline Rational pair_prob_by_levels(int t, int u, const TesterParams& params) {
  const int n = params.n;
  const Rational inv_paths(1, factorial(n));
  const int window = params.window();
  if (u == 0) {
    const BigInt through = factorial(t) * factorial(n - t);
    return Rational(through) * inv_paths / window / s_of(t, params);
  }
  const BigInt through = count_paths_through_pair(t, u, n);
  const Rational theta =
      (Rational(1, s_of(t, params)) + Rational(1, s_of(t + u, params))) / window;
  return Rational(through) * inv_paths * theta;
}

/*!
  \brief Exact probability that one draw yields the unordered outcome
         {x, y}.

  Zero for incomparable distinct points, for levels outside the middle
  layers, and for pairs closer than tau.  The same-point outcome is
  possible only when tau <= 0.
*/
inline PairProbability pair_prob(Point x, Point y, const TesterParams& params) {
  if (x.n != params.n || y.n != params.n)
    throw std::invalid_argument("pair_prob: dimension mismatch");
  PairProbability r{x, y, Rational(0), 0.0, BigInt(0)};
  const int lx = level(x), ly = level(y);
  if (!params.in_middle(lx) || !params.in_middle(ly)) return r;

  if (x == y) {
    if (0.0 < params.tau) return r;
    const int t = lx;
    r.path_count = factorial(t) * factorial(params.n - t);
    r.theta = 1.0 / (static_cast<double>(params.window()) * s_of(t, params));
    r.prob = pair_prob_by_levels(t, 0, params);
    return r;
  }
  if (!comparable(x, y)) return r;

  const int t = std::min(lx, ly);
  const int u = std::abs(ly - lx);
  if (static_cast<double>(u) < params.tau) return r;
  r.path_count = count_paths_through_pair(t, u, params.n);
  r.theta = (1.0 / s_of(t, params) + 1.0 / s_of(t + u, params)) / params.window();
  r.prob = pair_prob_by_levels(t, u, params);
  return r;
}

/*!
  \brief Exact total mass of all admissible outcomes of one draw.

  Sums pair_prob over every unordered comparable pair (grouped by
  level and gap) plus the same-point outcomes; equals 1 for correct
  sampling semantics, which the tests assert.
*/
inline Rational outcome_total_mass(const TesterParams& params) {
  const int n = params.n;
  Rational total = 0;
  for (int t = params.i_lo; t <= params.i_hi; ++t) {
    if (!(0.0 < params.tau)) {
      total += Rational(binomial(n, t)) * pair_prob_by_levels(t, 0, params);
    }
    for (int u = 1; t + u <= params.i_hi; ++u) {
      if (static_cast<double>(u) < params.tau) continue;
      const BigInt pairs = binomial(n, t) * binomial(n - t, u);
      total += Rational(pairs) * pair_prob_by_levels(t, u, params);
    }
  }
  return total;
}

}  // namespace monotest

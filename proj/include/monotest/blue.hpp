/*!
  \file blue.hpp
  \brief Exact evaluation of the both-points-blue event of one tester
         draw, and the correlation chain bounding it from below.

  Given a blue subset of the middle layers of density at least sigma,
  one draw picks both points blue with probability close to the
  independent-sampling value; the chain checked here bounds the exact
  probability by E (E - mu) with E the expected blue fraction of the
  middle window and mu = sigma / (16 c_eps).
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "monotest/exact.hpp"
#include "monotest/hypercube.hpp"
#include "monotest/pair_prob.hpp"
#include "monotest/rng.hpp"

namespace monotest {

struct BlueInstance {
  TesterParams params;
  std::vector<std::uint32_t> blue;  //!< distinct points, all in the middle layers

  Rational sigma_actual() const {
    return Rational(blue.size()) / Rational(BigInt(1) << params.n);
  }
};

inline void validate_blue_instance(const BlueInstance& inst) {
  std::vector<bool> seen(std::size_t{1} << inst.params.n, false);
  for (std::uint32_t m : inst.blue) {
    if (m >> inst.params.n) throw std::invalid_argument("blue instance: point out of range");
    if (!inst.params.in_middle(std::popcount(m)))
      throw std::invalid_argument("blue instance: point outside middle layers");
    if (seen[m]) throw std::invalid_argument("blue instance: duplicate point");
    seen[m] = true;
  }
}

/*!
  \brief Random instance with ceil(target_sigma 2^n) blue points drawn
         uniformly from the middle layers.
*/
inline BlueInstance random_blue_instance(const TesterParams& params, double target_sigma,
                                         Rng& rng) {
  std::vector<std::uint32_t> middle;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << params.n); ++m)
    if (params.in_middle(std::popcount(m))) middle.push_back(m);
  const auto want = static_cast<std::size_t>(
      std::ceil(target_sigma * static_cast<double>(std::uint64_t{1} << params.n)));
  if (want > middle.size())
    throw std::invalid_argument("random_blue_instance: sigma exceeds middle-layer mass");
  // Partial Fisher-Yates: the first `want` slots become the sample.
  for (std::size_t k = 0; k < want; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.uniform_below(middle.size() - k));
    std::swap(middle[k], middle[j]);
  }
  middle.resize(want);
  return BlueInstance{params, std::move(middle)};
}

/*!
  \brief Stress instance: blue points packed onto as few central layers
         as possible (worst case for the layer-marginal argument).
*/
inline BlueInstance concentrated_blue_instance(const TesterParams& params, double target_sigma) {
  const int n = params.n;
  auto want = static_cast<std::int64_t>(
      std::ceil(target_sigma * static_cast<double>(std::uint64_t{1} << n)));
  // Middle levels ordered by closeness to the centre, larger layers first.
  std::vector<int> levels;
  for (int lvl = params.i_lo; lvl <= params.i_hi; ++lvl) levels.push_back(lvl);
  std::sort(levels.begin(), levels.end(), [n](int a, int b) {
    const int da = std::abs(2 * a - n), db = std::abs(2 * b - n);
    return da != db ? da < db : a < b;
  });
  std::vector<std::uint32_t> blue;
  for (int lvl : levels) {
    if (want <= 0) break;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n) && want > 0; ++m) {
      if (std::popcount(m) == lvl) {
        blue.push_back(m);
        --want;
      }
    }
  }
  if (want > 0) throw std::invalid_argument("concentrated_blue_instance: sigma too large");
  return BlueInstance{params, std::move(blue)};
}

/*!
  \brief Exact probability that one draw yields two blue points (the
         same-point outcome counts when tau <= 0 and the point is blue).

  Blue-blue comparable pairs are bucketed by (level, gap); the draw
  probability depends on levels alone.
*/
inline Rational exact_blue_prob(const BlueInstance& inst) {
  const TesterParams& params = inst.params;
  const int n = params.n;
  if (n > 16) throw std::invalid_argument("exact_blue_prob: dimension too large");
  validate_blue_instance(inst);
  std::vector<bool> is_blue(std::size_t{1} << n, false);
  for (std::uint32_t m : inst.blue) is_blue[m] = true;

  // counts[t][u]: blue-blue comparable pairs with lower level t, gap u >= 1
  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(n + 1),
                                                 std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
  std::vector<std::uint64_t> level_count(static_cast<std::size_t>(n + 1), 0);
  for (std::uint32_t y : inst.blue) {
    ++level_count[static_cast<std::size_t>(std::popcount(y))];
    if (y == 0) continue;
    const int ly = std::popcount(y);
    for (std::uint32_t x = (y - 1) & y;; x = (x - 1) & y) {
      if (is_blue[x]) {
        const int lx = std::popcount(x);
        ++counts[static_cast<std::size_t>(lx)][static_cast<std::size_t>(ly - lx)];
      }
      if (x == 0) break;
    }
  }
  Rational total = 0;
  for (int t = params.i_lo; t <= params.i_hi; ++t) {
    if (!(0.0 < params.tau) && level_count[static_cast<std::size_t>(t)] > 0)
      total += Rational(level_count[static_cast<std::size_t>(t)]) * pair_prob_by_levels(t, 0, params);
    for (int u = 1; t + u <= params.i_hi; ++u) {
      const std::uint64_t c = counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)];
      if (c == 0 || static_cast<double>(u) < params.tau) continue;
      total += Rational(c) * pair_prob_by_levels(t, u, params);
    }
  }
  return total;
}

/*!
  \brief E[b(p) / |X_p|] in closed form: the layer-lvl vertex of a
         uniform path is uniform over that layer, so the expectation is
         the mean of the per-layer blue densities.
*/
inline Rational expected_blue_fraction(const BlueInstance& inst) {
  const TesterParams& params = inst.params;
  if (params.n > 20) throw std::invalid_argument("expected_blue_fraction: dimension too large");
  validate_blue_instance(inst);
  std::vector<std::uint64_t> level_count(static_cast<std::size_t>(params.n + 1), 0);
  for (std::uint32_t m : inst.blue) ++level_count[static_cast<std::size_t>(std::popcount(m))];
  Rational sum = 0;
  for (int i = params.i_lo; i <= params.i_hi; ++i)
    sum += Rational(level_count[static_cast<std::size_t>(i)], binomial(params.n, i));
  return sum / params.window();
}

struct BlueChainReport {
  Rational prob;           //!< exact both-blue probability
  Rational expected;       //!< E[b(p)/|X_p|]
  Rational mu;             //!< sigma / (16 c_eps), as the exact value of the double
  Rational rhs;            //!< expected (expected - mu)
  Rational sigma_actual;
  bool pass_product = false;   //!< prob >= expected (expected - mu)
  bool layer_condition = false;//!< |L_i|^2 n <= 4^n for every middle layer
  bool pass_sqrt = false;      //!< expected * ell >= sigma sqrt(n), squared form
  bool pass = false;
};

/*!
  \brief Checks the exact chain: the both-blue probability dominates
         E (E - mu), and E itself dominates sigma sqrt(n) / ell
         (evaluated in the squared form to stay rational) whenever the
         middle layers satisfy |L_i| <= 2^n / sqrt(n), which is
         verified exactly, not assumed.
*/
inline BlueChainReport check_blue_chain(const BlueInstance& inst) {
  const TesterParams& params = inst.params;
  BlueChainReport rep;
  rep.sigma_actual = inst.sigma_actual();
  const Rational sigma_rat = rational_from_double(params.sigma);
  if (rep.sigma_actual < sigma_rat)
    throw std::invalid_argument("check_blue_chain: blue density below sigma");
  rep.prob = exact_blue_prob(inst);
  rep.expected = expected_blue_fraction(inst);
  rep.mu = rational_from_double(params.sigma / (16.0 * params.c_eps));
  rep.rhs = rep.expected * (rep.expected - rep.mu);
  rep.pass_product = rep.prob >= rep.rhs;

  rep.layer_condition = true;
  const BigInt four_n = BigInt(1) << (2 * params.n);
  for (int i = params.i_lo; i <= params.i_hi; ++i) {
    const BigInt li = binomial(params.n, i);
    if (li * li * params.n > four_n) {
      rep.layer_condition = false;
      break;
    }
  }
  // expected * ell >= sigma sqrt(n)  <=>  (expected * ell)^2 >= sigma^2 n.
  const Rational lhs = rep.expected * params.ell;
  rep.pass_sqrt = lhs * lhs >= sigma_rat * sigma_rat * params.n;
  rep.pass = rep.pass_product && (!rep.layer_condition || rep.pass_sqrt);
  return rep;
}

}  // namespace monotest

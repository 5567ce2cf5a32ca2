/*!
  \file stats.hpp
  \brief Small statistics helpers: Wilson score intervals and
         chi-square goodness-of-fit checks.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace monotest {

//! z for a central 95% interval.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double p) const { return lo <= p && p <= hi; }
};

/*!
  \brief Wilson score interval for a binomial proportion; valid near 0,
         which is where rejection-rate estimates of nearly monotone
         functions live.
*/
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
  const double t = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (phat + z2 / (2.0 * t)) / denom;
  const double half =
      (z / denom) * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t));
  Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
  // the boundary cases are exact, not a rounding artifact away from it
  if (successes == 0) iv.lo = 0.0;
  if (successes == trials) iv.hi = 1.0;
  return iv;
}

inline double chi_square_stat(const std::vector<std::uint64_t>& observed,
                              const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_stat: shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) throw std::invalid_argument("chi_square_stat: nonpositive expectation");
    const double d = static_cast<double>(observed[i]) - expected[i];
    s += d * d / expected[i];
  }
  return s;
}

/*!
  \brief Upper critical value at significance 1e-3 for the degrees of
         freedom used by the uniformity tests.  Values are frozen
         constants of the chi-square distribution.
*/
inline double chi_square_critical_1e3(int df) {
  switch (df) {
    case 1: return 10.827566;
    case 2: return 13.815511;
    case 3: return 16.266236;
    case 4: return 18.466827;
    case 5: return 20.515006;
    case 6: return 22.457744;
    case 7: return 24.321886;
    case 23: return 49.728232;
    default: throw std::invalid_argument("chi_square_critical_1e3: df not tabulated");
  }
}

//! 4-standard-error tolerance check for an empirical frequency.
inline bool within_4se(double empirical, double exact, std::uint64_t trials) {
  const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
  return std::abs(empirical - exact) <= 4.0 * se;
}

}  // namespace monotest

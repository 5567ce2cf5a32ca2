/*!
  \file hypercube.hpp
  \brief Directed hypercube geometry: points, layers, tester parameters
         and uniform end-to-end path sampling.

  A point of {0,1}^n is encoded as an unsigned mask with bit i holding
  coordinate x_i; this encoding is canonical across the whole library,
  including file formats.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "monotest/rng.hpp"

namespace monotest {

inline constexpr int kMaxDimension = 30;

struct Point {
  std::uint32_t bits = 0;
  int n = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline int level(Point p) { return std::popcount(p.bits); }

inline Point make_point(std::uint32_t bits, int n) {
  if (n < 1 || n > kMaxDimension) throw std::invalid_argument("make_point: dimension out of range");
  if (n < 32 && (bits >> n) != 0) throw std::invalid_argument("make_point: bits exceed dimension");
  return Point{bits, n};
}

//! True iff a <= b coordinatewise.
inline bool dominated_by(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

inline bool comparable(Point a, Point b) {
  return dominated_by(a.bits, b.bits) || dominated_by(b.bits, a.bits);
}

//! Strict partial order a < b.
inline bool precedes(Point a, Point b) { return a.bits != b.bits && dominated_by(a.bits, b.bits); }

inline int l1_distance(Point a, Point b) { return std::popcount(a.bits ^ b.bits); }

/*!
  \brief Derived constants governing the path tester.

  c_eps = sqrt(10 ln(1/eps)); ell = 2 ceil(c_eps sqrt(n)); the middle
  layers are the integer levels in [n/2 - ell/2, n/2 + ell/2], clipped
  to [0, n] (for small n the window can exceed the cube).  tau is the
  minimum level distance between the two sampled points and may be
  negative, in which case the distance condition is vacuous.
*/
struct TesterParams {
  int n = 0;
  double eps = 0;
  double sigma = 0;
  double c_eps = 0;
  int ell = 0;
  int i_lo = 0;
  int i_hi = 0;
  double tau = 0;

  //! Number of middle layers = |X_p| for every path p.
  int window() const { return i_hi - i_lo + 1; }

  bool in_middle(int lvl) const { return lvl >= i_lo && lvl <= i_hi; }
};

// Parameter derivation is pure arithmetic, so it works far beyond the
// dimensions at which points and tables can be materialized.
inline TesterParams make_params(int n, double eps, double sigma) {
  if (n < 1 || n > 1'000'000) throw std::invalid_argument("make_params: dimension out of range");
  if (!(eps > 0.0) || eps > 0.5) throw std::invalid_argument("make_params: eps outside (0, 1/2]");
  if (!(sigma > 0.0) || sigma > 1.0) throw std::invalid_argument("make_params: sigma outside (0, 1]");
  TesterParams p;
  p.n = n;
  p.eps = eps;
  p.sigma = sigma;
  p.c_eps = std::sqrt(10.0 * std::log(1.0 / eps));
  p.ell = 2 * static_cast<int>(std::ceil(p.c_eps * std::sqrt(static_cast<double>(n))));
  // n and ell are at most 90ish here, so these are exact in double.
  p.i_lo = std::max(0, static_cast<int>(std::ceil((n - p.ell) / 2.0)));
  p.i_hi = std::min(n, static_cast<int>(std::floor((n + p.ell) / 2.0)));
  p.tau = sigma * p.ell / (32.0 * p.c_eps) - 1.0;
  return p;
}

/*!
  \brief A full ascending path 0^n -> 1^n, as the permutation of
         coordinate flips; order[k] is the coordinate set at step k.
*/
struct PathSample {
  int n = 0;
  std::vector<int> order;

  //! Vertex at the given level (the first `lvl` flips applied).
  Point vertex_at(int lvl) const {
    std::uint32_t m = 0;
    for (int k = 0; k < lvl; ++k) m |= (1u << order[static_cast<std::size_t>(k)]);
    return Point{m, n};
  }

  //! All n+1 vertices, one per level.
  std::vector<Point> vertices() const {
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    std::uint32_t m = 0;
    v.push_back(Point{0, n});
    for (int k = 0; k < n; ++k) {
      m |= (1u << order[static_cast<std::size_t>(k)]);
      v.push_back(Point{m, n});
    }
    return v;
  }
};

/*! \brief Uniform sample from all n! ascending paths. */
inline PathSample sample_path(int n, Rng& rng) {
  if (n < 1 || n > kMaxDimension) throw std::invalid_argument("sample_path: dimension out of range");
  PathSample s;
  s.n = n;
  s.order.resize(static_cast<std::size_t>(n));
  std::iota(s.order.begin(), s.order.end(), 0);
  rng.shuffle(s.order);
  return s;
}

/*! \brief X_p: the path vertices whose level lies in the middle layers, in level order. */
inline std::vector<Point> middle_points(const PathSample& path, const TesterParams& params) {
  if (path.n != params.n) throw std::invalid_argument("middle_points: dimension mismatch");
  std::vector<Point> xs;
  xs.reserve(static_cast<std::size_t>(params.window()));
  std::uint32_t m = 0;
  for (int lvl = 0; lvl <= path.n; ++lvl) {
    if (lvl > 0) m |= (1u << path.order[static_cast<std::size_t>(lvl - 1)]);
    if (params.in_middle(lvl)) xs.push_back(Point{m, path.n});
  }
  return xs;
}

/*!
  \brief Y_p(x): members of X_p at level distance >= tau from x.

  All points of xs lie on one path, so the l1 distance between two of
  them equals their level difference.  When tau <= 0 the whole of xs
  qualifies, including x itself.
*/
inline std::vector<Point> y_set(const std::vector<Point>& xs, Point x, const TesterParams& params) {
  if (std::find(xs.begin(), xs.end(), x) == xs.end())
    throw std::invalid_argument("y_set: x not a member of xs");
  const int lx = level(x);
  std::vector<Point> ys;
  ys.reserve(xs.size());
  for (const Point& z : xs) {
    if (std::abs(level(z) - lx) >= params.tau) ys.push_back(z);
  }
  return ys;
}

/*!
  \brief s(x) = |Y_p(x)| as a function of the level of x alone;
         independent of the path.
*/
inline int s_of(int level_x, const TesterParams& params) {
  if (!params.in_middle(level_x)) throw std::out_of_range("s_of: level outside middle layers");
  int s = 0;
  for (int i = params.i_lo; i <= params.i_hi; ++i) {
    if (std::abs(i - level_x) >= params.tau) ++s;
  }
  return s;
}

}  // namespace monotest

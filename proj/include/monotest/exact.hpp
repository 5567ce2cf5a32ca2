/*!
  \file exact.hpp
  \brief Exact big-integer / rational arithmetic helpers.

  All combinatorial quantities (path counts, probabilities, metric
  ratios) are kept exact; floating point is used only for reporting
  and for parameters that are inherently real-valued.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace monotest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/*! \brief Layer size |L_i| of the n-cube as a 64-bit count (valid for n <= 60). */
inline std::uint64_t layer_size_u64(int n, int i) {
  if (i < 0 || i > n) return 0;
  return binomial(n, i).convert_to<std::uint64_t>();
}

/*! \brief Exact rational value of a double (doubles are dyadic rationals). */
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
  Rational r;
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  BigInt num = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  if (exp >= 0) {
    r = Rational(num << exp);
  } else {
    r = Rational(num, BigInt(1) << (-exp));
  }
  return r;
}

/*! \brief Renders a rational as "p/q" (or "p" when q = 1). */
inline std::string fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace monotest

/*!
  \file rng.hpp
  \brief Seeded randomness with a frozen cross-platform contract.

  Every experiment takes a master seed; trial t runs on the stream
  seeded with derive_seed(master, t).  Bounded sampling and shuffling
  are implemented here (rather than via std distributions, which are
  not bit-stable across standard libraries) so that a fixed seed
  yields identical behaviour everywhere, forever.
*/

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace monotest {

/*! \brief SplitMix64 finalizer; the fixed seed-derivation hash. */
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/*! \brief Per-trial seed = hash(master seed, trial index).  Frozen for reproducibility. */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index) {
  return splitmix64(splitmix64(master) ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  //! Unbiased uniform draw from {0, ..., bound-1}; bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  //! Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    return lo + static_cast<std::int64_t>(
                    uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  //! Uniform real in [0, 1) with 53 random bits.
  double uniform_real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform_real01() < p; }

  //! Fisher-Yates shuffle with this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace monotest

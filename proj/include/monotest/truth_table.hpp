/*!
  \file truth_table.hpp
  \brief Bit-packed complete truth tables and the built-in function
         families, plus the BFTT file format.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monotest/hypercube.hpp"
#include "monotest/rng.hpp"

namespace monotest {

/*!
  \brief A complete Boolean function on {0,1}^n, one bit per point.

  Index = point mask; little-endian bit order within each byte.  Bits
  beyond index 2^n - 1 stay zero.
*/
class TruthTable {
 public:
  TruthTable() = default;

  explicit TruthTable(int n, bool fill = false) : n_(n) {
    if (n < 1 || n > kMaxDimension) throw std::invalid_argument("TruthTable: dimension out of range");
    data_.assign(num_bytes(n), fill ? 0xff : 0x00);
    if (fill) clear_padding();
  }

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool get(std::uint32_t mask) const {
    return (data_[mask >> 3] >> (mask & 7)) & 1;
  }
  bool get(Point p) const {
    if (p.n != n_) throw std::invalid_argument("TruthTable::get: dimension mismatch");
    return get(p.bits);
  }

  void set(std::uint32_t mask, bool v) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << (mask & 7));
    if (v)
      data_[mask >> 3] |= bit;
    else
      data_[mask >> 3] &= static_cast<std::uint8_t>(~bit);
  }

  std::uint64_t count_ones() const {
    std::uint64_t c = 0;
    for (std::uint8_t b : data_) c += std::popcount(static_cast<unsigned>(b));
    return c;
  }

  const std::vector<std::uint8_t>& bytes() const { return data_; }

  static std::size_t num_bytes(int n) {
    return static_cast<std::size_t>(((std::uint64_t{1} << n) + 7) / 8);
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  void clear_padding() {
    const std::uint64_t valid = size();
    for (std::uint64_t i = valid; i < 8 * data_.size(); ++i) set(static_cast<std::uint32_t>(i), false);
  }

  int n_ = 0;
  std::vector<std::uint8_t> data_;
};

// ---------------------------------------------------------------------------
// Function families
// ---------------------------------------------------------------------------

inline TruthTable constant(int n, bool b) { return TruthTable(n, b); }

//! f(x) = x_i.
inline TruthTable dictator(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("dictator: coordinate out of range");
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m) t.set(m, (m >> i) & 1);
  return t;
}

//! f(x) = 1 - x_i.
inline TruthTable anti_dictator(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("anti_dictator: coordinate out of range");
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m) t.set(m, !((m >> i) & 1));
  return t;
}

//! f(x) = 1 iff |x| >= n/2.
inline TruthTable majority(int n) {
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m)
    t.set(m, 2 * std::popcount(m) >= n);
  return t;
}

//! f(x) = 1 iff |x| <= n/2; far from monotone yet with few violated edges.
inline TruthTable anti_majority(int n) {
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m)
    t.set(m, 2 * std::popcount(m) <= n);
  return t;
}

/*!
  \brief Two shifted threshold blocks glued across coordinate 0; the
         classic function whose violations all cross one dimension.

  Domain dimension is n+1; coordinate 0 is the leading bit b, the rest
  encode x in {0,1}^n.  f(0,x) = 1 iff |x| > n/2 - 2 sqrt(n) and
  f(1,x) = 1 iff |x| > n/2 + 2 sqrt(n).  Threshold comparisons are done
  in exact integer arithmetic.
*/
inline TruthTable two_block_example(int n) {
  if (n + 1 > kMaxDimension) throw std::invalid_argument("two_block_example: dimension out of range");
  TruthTable t(n + 1);
  // |x| <= n/2 - 2 sqrt(n)  <=>  n - 2|x| >= 4 sqrt(n)  <=>  n-2|x| >= 0 and (n-2|x|)^2 >= 16 n.
  // |x| <= n/2 + 2 sqrt(n)  <=>  2|x| - n <= 4 sqrt(n)  <=>  2|x|-n <= 0 or  (2|x|-n)^2 <= 16 n.
  auto below_lo = [n](int w) {
    const long long d = static_cast<long long>(n) - 2 * w;
    return d >= 0 && d * d >= 16LL * n;
  };
  auto below_hi = [n](int w) {
    const long long d = 2LL * w - n;
    return d <= 0 || d * d <= 16LL * n;
  };
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    const bool lead = m & 1u;
    const int w = std::popcount(m >> 1);
    t.set(m, lead ? !below_hi(w) : !below_lo(w));
  }
  return t;
}

//! i.i.d. fair coin per point.
inline TruthTable random_function(int n, std::uint64_t seed) {
  TruthTable t(n);
  Rng rng(seed);
  for (std::uint32_t m = 0; m < t.size(); ++m) t.set(m, rng.uniform_below(2) == 1);
  return t;
}

/*!
  \brief Random monotone function: the upward closure of a random seed
         set of points.

  Draws k = 1 + (u mod 2n) seed points uniformly (with replacement) and
  returns f(x) = 1 iff x dominates some seed point.  Deterministic given
  the seed; covers dictator-like through sparse-union shapes.  Not
  uniform over monotone functions.
*/
inline TruthTable random_monotone(int n, std::uint64_t seed) {
  Rng rng(seed);
  const int k = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(2 * n)));
  TruthTable t(n);
  for (int j = 0; j < k; ++j)
    t.set(static_cast<std::uint32_t>(rng.uniform_below(t.size())), true);
  // Upward closure: f(x) = seed(x) or f(x without some set bit).
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    if (t.get(m)) continue;
    for (int i = 0; i < n; ++i) {
      if ((m >> i) & 1 && t.get(m & ~(1u << i))) {
        t.set(m, true);
        break;
      }
    }
  }
  return t;
}

//! Table from the low 2^n bits of an integer (n <= 6); bit m = f(m).
inline TruthTable table_from_bits(int n, std::uint64_t bits) {
  if (n > 6) throw std::invalid_argument("table_from_bits: dimension too large");
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m) t.set(m, (bits >> m) & 1);
  return t;
}

//! Inverse of table_from_bits (n <= 6).
inline std::uint64_t bits_from_table(const TruthTable& f) {
  if (f.n() > 6) throw std::invalid_argument("bits_from_table: dimension too large");
  std::uint64_t bits = 0;
  for (std::uint32_t m = 0; m < f.size(); ++m)
    if (f.get(m)) bits |= (std::uint64_t{1} << m);
  return bits;
}

// ---------------------------------------------------------------------------

/*!
  \brief Exact monotonicity: no directed edge (x, x + e_i) with
         f(x) = 1 and f(x + e_i) = 0.  Edge-local checks suffice by
         transitivity.
*/
inline bool is_monotone_exact(const TruthTable& f) {
  const int n = f.n();
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    if (!f.get(m)) continue;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t up = m | (1u << i);
      if (up != m && !f.get(up)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// BFTT file format: "BFTT", version byte = 1, dimension byte, then
// ceil(2^n/8) table bytes (little-endian bit order, index = point mask).
// ---------------------------------------------------------------------------

inline constexpr char kBfttMagic[4] = {'B', 'F', 'T', 'T'};
inline constexpr std::uint8_t kBfttVersion = 1;

inline std::vector<std::uint8_t> to_bftt_bytes(const TruthTable& f) {
  std::vector<std::uint8_t> out;
  out.reserve(6 + f.bytes().size());
  out.insert(out.end(), {'B', 'F', 'T', 'T'});
  out.push_back(kBfttVersion);
  out.push_back(static_cast<std::uint8_t>(f.n()));
  out.insert(out.end(), f.bytes().begin(), f.bytes().end());
  return out;
}

inline TruthTable from_bftt_bytes(const std::vector<std::uint8_t>& raw) {
  if (raw.size() < 6 || std::memcmp(raw.data(), kBfttMagic, 4) != 0)
    throw std::runtime_error("BFTT: bad magic");
  if (raw[4] != kBfttVersion) throw std::runtime_error("BFTT: unsupported version");
  const int n = raw[5];
  if (n < 1 || n > kMaxDimension) throw std::runtime_error("BFTT: dimension out of range");
  if (raw.size() != 6 + TruthTable::num_bytes(n)) throw std::runtime_error("BFTT: wrong length");
  TruthTable t(n);
  for (std::uint32_t m = 0; m < t.size(); ++m)
    t.set(m, (raw[6 + (m >> 3)] >> (m & 7)) & 1);
  return t;
}

inline void write_bftt(const TruthTable& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("BFTT: cannot open for writing: " + path);
  const auto raw = to_bftt_bytes(f);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("BFTT: write failed: " + path);
}

inline TruthTable read_bftt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("BFTT: cannot open: " + path);
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  return from_bftt_bytes(raw);
}

}  // namespace monotest

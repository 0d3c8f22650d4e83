#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace fbns {

// Counter-based block RNG (Philox 4x32, 10 rounds).  A (key, counter) pair maps
// to 128 output bits with no sequential state, so any draw can be addressed
// directly and independent substreams are just distinct counter prefixes.
struct Philox4x32 {
  using Ctr = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Ctr block(Ctr c, Key k) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    return c;
  }
};

// Addressable stream of standard normals: draw i is a pure function of
// (seed, stream, i).  Extending a run with more modes or more draws never
// changes values already produced, which is what makes path extension and
// seed sweeps reproducible bit-for-bit.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Normals come in Box-Muller pairs; block b yields draws 2b and 2b+1.
  std::array<double, 2> normal_pair(std::uint64_t block_index) const {
    const auto w = Philox4x32::block(
        {static_cast<std::uint32_t>(block_index),
         static_cast<std::uint32_t>(block_index >> 32),
         static_cast<std::uint32_t>(stream_),
         static_cast<std::uint32_t>(stream_ >> 32)},
        key_);
    const double u1 = to_unit(w[0], w[1]);  // in (0, 1], so log(u1) is finite
    const double u2 = to_unit(w[2], w[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

  double normal(std::uint64_t i) const {
    const auto pair = normal_pair(i >> 1);
    return pair[i & 1];
  }

  // Fills out[0..count) with draws first..first+count-1 of this stream.
  void fill_normal(double* out, std::uint64_t count,
                   std::uint64_t first = 0) const {
    std::uint64_t i = first;
    std::uint64_t n = 0;
    if ((i & 1) && n < count) {
      out[n++] = normal(i++);
    }
    while (n + 2 <= count) {
      const auto pair = normal_pair(i >> 1);
      out[n++] = pair[0];
      out[n++] = pair[1];
      i += 2;
    }
    if (n < count) {
      out[n] = normal(i);
    }
  }

  std::uint64_t seed() const {
    return (std::uint64_t{key_[1]} << 32) | key_[0];
  }
  std::uint64_t stream() const { return stream_; }

 private:
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t x = (std::uint64_t{hi} << 32) | lo;
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
};

}  // namespace fbns

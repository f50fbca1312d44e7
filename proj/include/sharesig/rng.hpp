#pragma once

#include <bit>
#include <cstdint>

namespace sharesig {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMix1 = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMix2 = 0x94D049BB133111EBULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * kMix1;
  z = (z ^ (z >> 27)) * kMix2;
  return z ^ (z >> 31);
}

/// Top 52 bits as a double in [0, 1).
inline double to_unit(std::uint64_t x) {
  return std::bit_cast<double>((x >> 12) | 0x3FF0000000000000ULL) - 1.0;
}

/// Counter-based stream: variate k of draw i depends only on (seed, i, k),
/// so any sharding of the draw range reproduces the serial sequence.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t per_draw)
      : key_(mix64(seed)), per_draw_(per_draw) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t per_draw() const { return per_draw_; }

  std::uint64_t bits(std::uint64_t draw, std::uint64_t k) const {
    return mix64(key_ + (draw * per_draw_ + k + 1) * kGolden);
  }
  double uniform(std::uint64_t draw, std::uint64_t k) const {
    return to_unit(bits(draw, k));
  }

 private:
  std::uint64_t key_;
  std::uint64_t per_draw_;
};

}  // namespace sharesig

#pragma once

#include <cstdint>

namespace revlat {

/// Counter-based SplitMix64: draw k of stream `seed` is
/// mix(seed + (k + 1) * 0x9E3779B97F4A7C15), with Steele/Lea/Flood's
/// finalizer. Any draw can be computed independently, so shards of a
/// sampling job need no shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

  /// Independent sub-stream for shard k.
  CounterRng split(std::uint64_t shard) const { return CounterRng(bits(~shard)); }

 private:
  std::uint64_t seed_;
};

}  // namespace revlat

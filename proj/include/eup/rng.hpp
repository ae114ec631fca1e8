#pragma once

#include <cstdint>

namespace eup {

/// SplitMix64: the 64-bit state advances by the golden-gamma constant and
/// each output is a finalized mix of the state. Small, fast, and identical
/// across platforms, which is what artifact reproducibility needs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Independent stream for a subtask: hash the salt through the mixer
  /// before combining, so adjacent salts give unrelated streams.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 mix(salt);
    return SplitMix64(seed ^ mix.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace eup

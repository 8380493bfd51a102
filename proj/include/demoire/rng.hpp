#pragma once

#include <cmath>
#include <cstdint>

namespace demoire {

// Fixed cross-platform generator (xoshiro256**, Blackman & Vigna).
// Every random draw in the toolkit flows through this type so that a seed
// reproduces results bit-for-bit on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    // splitmix64 expansion of the single seed word into the full state.
    uint64_t z = seed;
    for (auto& s : state_) {
      z += 0x9E3779B97F4A7C15ULL;
      uint64_t t = z;
      t = (t ^ (t >> 30)) * 0xBF58476D1CE4E5B9ULL;
      t = (t ^ (t >> 27)) * 0x94D049BB133111EBULL;
      s = t ^ (t >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] via 128-bit multiply-shift.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t r = static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * span) >> 64);
    return lo + static_cast<int64_t>(r);
  }

  // Box-Muller; two fresh uniforms per call, no cached state.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

// Stream seed for item i of a batch run: decorrelates items under one seed.
inline uint64_t item_seed(uint64_t global_seed, uint64_t item_index) {
  return global_seed ^ (item_index * 0x9E3779B97F4A7C15ULL);
}

}  // namespace demoire

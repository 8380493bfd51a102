#pragma once

#include <cmath>
#include <cstdint>

#include "demoire/error.hpp"
#include "demoire/image.hpp"

namespace demoire {
namespace detail {

inline double lattice_noise(uint64_t seed, uint64_t tag, int64_t ix, int64_t iy) {
  uint64_t z = seed;
  z ^= tag * 0xD1342543DE82EF95ULL;
  z ^= static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ULL;
  z ^= static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4FULL;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

inline double value_noise(uint64_t seed, uint64_t tag, double x, double y) {
  const int64_t ix = static_cast<int64_t>(std::floor(x));
  const int64_t iy = static_cast<int64_t>(std::floor(y));
  const double fx = fade(x - static_cast<double>(ix));
  const double fy = fade(y - static_cast<double>(iy));
  const double v00 = lattice_noise(seed, tag, ix, iy);
  const double v10 = lattice_noise(seed, tag, ix + 1, iy);
  const double v01 = lattice_noise(seed, tag, ix, iy + 1);
  const double v11 = lattice_noise(seed, tag, ix + 1, iy + 1);
  const double a = v00 + (v10 - v00) * fx;
  const double b = v01 + (v11 - v01) * fx;
  return a + (b - a) * fy;
}

}  // namespace detail

// Multi-octave value noise, three correlated channels, values kept inside
// [0.1, 0.9] so downstream processing stays away from the clamp rails.
// Purely a function of (size, seed); no shared state.
inline ImageRGB procedural_image(int width, int height, uint64_t seed, int octaves = 4) {
  if (width < 1 || height < 1) throw DimensionMismatch("procedural_image: empty size");
  if (octaves < 1) throw Error("procedural_image: need at least one octave");
  ImageRGB img(width, height);
  const double base = static_cast<double>(width > height ? width : height) / 4.0;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      double shared = 0.0, amp = 1.0, norm = 0.0, freq = 1.0 / base;
      for (int o = 0; o < octaves; ++o) {
        shared += amp * detail::value_noise(seed, 0, x * freq, y * freq);
        norm += amp;
        amp *= 0.5;
        freq *= 2.0;
      }
      shared /= norm;
      for (int c = 0; c < 3; ++c) {
        const double tint =
            detail::value_noise(seed, 1 + static_cast<uint64_t>(c), x / base, y / base);
        const double v = 0.7 * shared + 0.3 * tint;
        img.at(x, y, c) = 0.1 + 0.8 * v;
      }
    }
  return img;
}

}  // namespace demoire

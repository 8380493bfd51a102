#pragma once

#include <cstdint>
#include <vector>

#include "demoire/error.hpp"
#include "demoire/image.hpp"
#include "demoire/rng.hpp"

namespace demoire {

// Binary pixel mask, 1 = masked out.
class PatchMask {
 public:
  PatchMask(int width, int height)
      : width_(width), height_(height), bits_(static_cast<size_t>(width) * height, 0) {
    if (width < 1 || height < 1) throw DimensionMismatch("PatchMask: empty mask");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  uint8_t at(int x, int y) const { return bits_[static_cast<size_t>(y) * width_ + x]; }
  void set(int x, int y, uint8_t v) { bits_[static_cast<size_t>(y) * width_ + x] = v; }

  size_t count() const {
    size_t c = 0;
    for (uint8_t b : bits_) c += b;
    return c;
  }
  double coverage() const {
    return static_cast<double>(count()) / static_cast<double>(bits_.size());
  }

  ImagePlane plane() const {
    ImagePlane p(width_, height_);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) p.at(x, y) = at(x, y) ? 1.0 : 0.0;
    return p;
  }

  const std::vector<uint8_t>& bits() const { return bits_; }
  std::vector<uint8_t>& bits() { return bits_; }

 private:
  int width_, height_;
  std::vector<uint8_t> bits_;
};

// Drop axis-aligned rectangles (sides drawn from [side_min, side_max], fully
// in bounds, overlaps fine) until coverage reaches the ratio, then release
// randomly chosen masked pixels until at most ratio + 0.02 remains covered.
// The realized coverage lands within 0.02 of the request.
inline PatchMask generate_mask(int width, int height, double ratio, Rng& rng, int side_min = 8,
                               int side_max = 32) {
  if (ratio < 0.0 || ratio > 1.0) throw RatioOutOfRange("generate_mask: ratio outside [0, 1]");
  if (side_min < 1 || side_min > side_max)
    throw Error("generate_mask: bad rectangle side bounds");
  PatchMask mask(width, height);
  const size_t total = static_cast<size_t>(width) * height;
  const double want = ratio * static_cast<double>(total);

  size_t covered = 0;
  while (static_cast<double>(covered) < want - 1e-9) {
    int rw = static_cast<int>(rng.uniform_int(side_min, side_max));
    int rh = static_cast<int>(rng.uniform_int(side_min, side_max));
    if (rw > width) rw = width;
    if (rh > height) rh = height;
    const int x0 = static_cast<int>(rng.uniform_int(0, width - rw));
    const int y0 = static_cast<int>(rng.uniform_int(0, height - rh));
    for (int y = y0; y < y0 + rh; ++y)
      for (int x = x0; x < x0 + rw; ++x) {
        uint8_t& b = mask.bits()[static_cast<size_t>(y) * width + x];
        covered += 1 - b;
        b = 1;
      }
  }

  const size_t cap = static_cast<size_t>((ratio + 0.02) * static_cast<double>(total));
  if (covered > cap) {
    std::vector<size_t> idx;
    idx.reserve(covered);
    for (size_t i = 0; i < total; ++i)
      if (mask.bits()[i]) idx.push_back(i);
    for (size_t i = idx.size() - 1; i > 0; --i) {
      const size_t k = static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(i)));
      std::swap(idx[i], idx[k]);
    }
    for (size_t i = 0; i < covered - cap; ++i) mask.bits()[idx[i]] = 0;
  }
  return mask;
}

// Zero (or fill) every masked pixel across all channels.
inline ImageRGB apply_mask(const ImageRGB& img, const PatchMask& mask, double fill = 0.0) {
  if (img.width() != mask.width() || img.height() != mask.height())
    throw DimensionMismatch("apply_mask: image and mask size differ");
  ImageRGB out = img;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (mask.at(x, y))
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = fill;
  return out;
}

}  // namespace demoire

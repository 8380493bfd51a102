#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "demoire/error.hpp"

namespace demoire {

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
inline double clamp255(double v) { return v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v); }

// Mirror index without repeating the edge sample (…2 1 | 0 1 2… | 1 0…).
// Preserves index parity, so Bayer phase survives reflection.
inline int reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i = std::abs(i) % period;
  return i < n ? i : period - i;
}

// Mirror index with the edge sample repeated (…1 0 | 0 1 2… | 2…).
// For a symmetric kernel this extension conserves the image sum exactly.
inline int reflect_edge(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i = i < 0 ? -i - 1 : i;
  i %= period;
  return i < n ? i : period - 1 - i;
}

// Single-channel raster, row-major doubles.
class ImagePlane {
 public:
  ImagePlane() = default;
  ImagePlane(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        data_(static_cast<size_t>(width) * height, fill) {
    if (width < 1 || height < 1) throw ImageTooSmall("ImagePlane: dimensions must be positive");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }

  double& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return data_[static_cast<size_t>(y) * width_ + x]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double mean() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s / static_cast<double>(data_.size());
  }

  bool same_size(const ImagePlane& o) const { return width_ == o.width_ && height_ == o.height_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Interleaved RGB raster, values nominally in [0,1].
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(int width, int height, double r = 0.0, double g = 0.0, double b = 0.0)
      : width_(width), height_(height), data_(static_cast<size_t>(width) * height * 3) {
    if (width < 1 || height < 1) throw ImageTooSmall("ImageRGB: dimensions must be positive");
    for (size_t i = 0; i < data_.size(); i += 3) {
      data_[i] = r;
      data_[i + 1] = g;
      data_[i + 2] = b;
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  double& at(int x, int y, int c) { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }
  double at(int x, int y, int c) const { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_size(const ImageRGB& o) const { return width_ == o.width_ && height_ == o.height_; }

  ImagePlane channel(int c) const {
    ImagePlane p(width_, height_);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) p.at(x, y) = at(x, y, c);
    return p;
  }

  void set_channel(int c, const ImagePlane& p) {
    if (p.width() != width_ || p.height() != height_)
      throw DimensionMismatch("set_channel: plane size differs from image");
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) at(x, y, c) = p.at(x, y);
  }

  void clamp() {
    for (double& v : data_) v = clamp01(v);
  }

  ImageRGB flipped_horizontal() const {
    ImageRGB out(width_, height_);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x)
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = at(width_ - 1 - x, y, c);
    return out;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// YCbCr on the full-range 0-255 scale (BT.601 / JPEG convention), interleaved.
class ImageYCbCr {
 public:
  ImageYCbCr() = default;
  ImageYCbCr(int width, int height)
      : width_(width), height_(height), data_(static_cast<size_t>(width) * height * 3, 0.0) {
    if (width < 1 || height < 1) throw ImageTooSmall("ImageYCbCr: dimensions must be positive");
  }

  int width() const { return width_; }
  int height() const { return height_; }

  double& at(int x, int y, int c) { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }
  double at(int x, int y, int c) const { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  ImagePlane channel(int c) const {
    ImagePlane p(width_, height_);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) p.at(x, y) = at(x, y, c);
    return p;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Single-plane RGGB mosaic: (even y, even x) = R, (odd y, odd x) = B, rest G.
class BayerRaster {
 public:
  BayerRaster() = default;
  BayerRaster(int width, int height) : plane_(width, height) {
    if (width % 2 != 0 || height % 2 != 0)
      throw OddDimensions("BayerRaster: width and height must be even");
  }

  int width() const { return plane_.width(); }
  int height() const { return plane_.height(); }

  double& at(int x, int y) { return plane_.at(x, y); }
  double at(int x, int y) const { return plane_.at(x, y); }

  // Channel sampled at (x, y): 0 = R, 1 = G, 2 = B.
  static int channel_at(int x, int y) {
    const bool ox = x & 1, oy = y & 1;
    if (!ox && !oy) return 0;
    if (ox && oy) return 2;
    return 1;
  }

  ImagePlane& plane() { return plane_; }
  const ImagePlane& plane() const { return plane_; }

 private:
  ImagePlane plane_;
};

// Bilinear lookup at a fractional position; out-of-range taps reflect (101).
inline double bilinear_at(const ImagePlane& p, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0, fy = y - y0;
  const int xa = reflect101(x0, p.width()), xb = reflect101(x0 + 1, p.width());
  const int ya = reflect101(y0, p.height()), yb = reflect101(y0 + 1, p.height());
  const double top = p.at(xa, ya) * (1.0 - fx) + p.at(xb, ya) * fx;
  const double bot = p.at(xa, yb) * (1.0 - fx) + p.at(xb, yb) * fx;
  return top * (1.0 - fy) + bot * fy;
}

inline double bilinear_at(const ImageRGB& img, double x, double y, int c) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0, fy = y - y0;
  const int xa = reflect101(x0, img.width()), xb = reflect101(x0 + 1, img.width());
  const int ya = reflect101(y0, img.height()), yb = reflect101(y0 + 1, img.height());
  const double top = img.at(xa, ya, c) * (1.0 - fx) + img.at(xb, ya, c) * fx;
  const double bot = img.at(xa, yb, c) * (1.0 - fx) + img.at(xb, yb, c) * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace demoire

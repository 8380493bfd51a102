#pragma once

#include <cmath>
#include <vector>

#include "demoire/color.hpp"
#include "demoire/error.hpp"
#include "demoire/filter.hpp"
#include "demoire/image.hpp"

namespace demoire {

struct CannyConfig {
  double sigma = 1.4;
  double low = 0.1;   // fraction of the max gradient magnitude
  double high = 0.2;

  void validate() const {
    if (sigma <= 0.0) throw NonPositiveSigma("canny: sigma must be > 0");
    if (!(0.0 < low && low < high && high <= 1.0))
      throw BadThresholds("canny: need 0 < low < high <= 1");
  }
};

// Classic Canny on a grayscale plane: smooth, Sobel, thin along the gradient,
// then double-threshold hysteresis with 8-connectivity. Returns a {0,1} plane.
inline ImagePlane canny(const ImagePlane& gray, const CannyConfig& cfg = {}) {
  cfg.validate();
  const int w = gray.width(), h = gray.height();
  const ImagePlane smooth = gaussian_blur(gray, cfg.sigma);
  const ImagePlane gx = sobel_x(smooth);
  const ImagePlane gy = sobel_y(smooth);

  ImagePlane mag(w, h);
  double max_mag = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = std::hypot(gx.at(x, y), gy.at(x, y));
      mag.at(x, y) = m;
      if (m > max_mag) max_mag = m;
    }
  ImagePlane edges(w, h);
  if (max_mag <= 0.0) return edges;

  // Thin: quantize the gradient direction into four bins and keep a pixel only
  // if it beats the forward neighbor and at least ties the backward one. On a
  // perfectly symmetric ridge that keeps exactly one of the two tied pixels.
  ImagePlane thin(w, h);
  const double pi = 3.141592653589793;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = mag.at(x, y);
      if (m <= 0.0) continue;
      double th = std::atan2(gy.at(x, y), gx.at(x, y));
      if (th < 0.0) th += pi;
      int dx = 1, dy = 0;
      if (th < pi / 8.0 || th >= 7.0 * pi / 8.0) {
        dx = 1;
        dy = 0;
      } else if (th < 3.0 * pi / 8.0) {
        dx = 1;
        dy = 1;
      } else if (th < 5.0 * pi / 8.0) {
        dx = 0;
        dy = 1;
      } else {
        dx = -1;
        dy = 1;
      }
      const double fwd = mag.at(reflect101(x + dx, w), reflect101(y + dy, h));
      const double bwd = mag.at(reflect101(x - dx, w), reflect101(y - dy, h));
      if (m > fwd && m >= bwd) thin.at(x, y) = m;
    }

  const double high_t = cfg.high * max_mag;
  const double low_t = cfg.low * max_mag;

  // Hysteresis: seed from strong pixels, grow through weak ones.
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thin.at(x, y) >= high_t) {
        edges.at(x, y) = 1.0;
        stack.emplace_back(x, y);
      }
  while (!stack.empty()) {
    const auto [cx, cy] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = cx + dx, ny = cy + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (edges.at(nx, ny) == 0.0 && thin.at(nx, ny) >= low_t) {
          edges.at(nx, ny) = 1.0;
          stack.emplace_back(nx, ny);
        }
      }
  }
  return edges;
}

inline ImagePlane canny(const ImageRGB& img, const CannyConfig& cfg = {}) {
  return canny(luma(img), cfg);
}

inline ImagePlane canny(const ImageRGB& img, double sigma, double low, double high) {
  return canny(img, CannyConfig{sigma, low, high});
}

}  // namespace demoire

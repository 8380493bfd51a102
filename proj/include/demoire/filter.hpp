#pragma once

#include <cmath>
#include <vector>

#include "demoire/image.hpp"

namespace demoire {

// Discrete Gaussian taps for radius ceil(3*sigma), normalized to sum 1.
inline std::vector<double> gaussian_kernel(double sigma) {
  if (sigma <= 0.0) throw NonPositiveSigma("gaussian_kernel: sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable Gaussian smoothing. Borders use the edge-repeating mirror
// (reflect_edge), which conserves the image sum for any symmetric kernel.
inline ImagePlane gaussian_blur(const ImagePlane& img, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = img.width(), h = img.height();

  ImagePlane tmp(w, h), out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) s += k[i + radius] * img.at(reflect_edge(x + i, w), y);
      tmp.at(x, y) = s;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) s += k[i + radius] * tmp.at(x, reflect_edge(y + i, h));
      out.at(x, y) = s;
    }
  return out;
}

inline ImageRGB gaussian_blur(const ImageRGB& img, double sigma) {
  ImageRGB out(img.width(), img.height());
  for (int c = 0; c < 3; ++c) out.set_channel(c, gaussian_blur(img.channel(c), sigma));
  return out;
}

namespace detail {

// Per-output-coordinate triangle-filter taps, pixel centers aligned. When
// minifying, the support stretches by the scale factor so each output pixel
// integrates its full source footprint; when magnifying it degenerates to the
// classic two-tap bilinear kernel.
struct ResampleTaps {
  std::vector<int> first;
  std::vector<std::vector<double>> weights;
};

inline ResampleTaps triangle_taps(int src_n, int dst_n) {
  const double scale = static_cast<double>(src_n) / dst_n;
  const double fscale = scale > 1.0 ? scale : 1.0;
  ResampleTaps taps;
  taps.first.resize(dst_n);
  taps.weights.resize(dst_n);
  for (int i = 0; i < dst_n; ++i) {
    const double center = (i + 0.5) * scale - 0.5;
    const int lo = static_cast<int>(std::ceil(center - fscale));
    const int hi = static_cast<int>(std::floor(center + fscale));
    std::vector<double> w(static_cast<size_t>(hi - lo + 1));
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) {
      const double t = std::abs((j - center) / fscale);
      w[j - lo] = t < 1.0 ? 1.0 - t : 0.0;
      sum += w[j - lo];
    }
    for (double& v : w) v /= sum;
    taps.first[i] = lo;
    taps.weights[i] = std::move(w);
  }
  return taps;
}

}  // namespace detail

// Separable triangle-filter resize. Same-size requests pass the image through
// untouched; out-of-range taps mirror via reflect101.
inline ImageRGB resize_bilinear(const ImageRGB& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ImageTooSmall("resize_bilinear: output dimensions must be positive");
  if (out_w == img.width() && out_h == img.height()) return img;

  const detail::ResampleTaps tx = detail::triangle_taps(img.width(), out_w);
  const detail::ResampleTaps ty = detail::triangle_taps(img.height(), out_h);

  ImageRGB tmp(out_w, img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < out_w; ++x)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (size_t j = 0; j < tx.weights[x].size(); ++j)
          s += tx.weights[x][j] * img.at(reflect101(tx.first[x] + static_cast<int>(j), img.width()), y, c);
        tmp.at(x, y, c) = s;
      }
  ImageRGB out(out_w, out_h);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (size_t j = 0; j < ty.weights[y].size(); ++j)
          s += ty.weights[y][j] * tmp.at(x, reflect101(ty.first[y] + static_cast<int>(j), img.height()), c);
        out.at(x, y, c) = s;
      }
  return out;
}

inline ImagePlane downsample2(const ImagePlane& img) {
  const int w = img.width() / 2, h = img.height() / 2;
  ImagePlane out(w > 0 ? w : 1, h > 0 ? h : 1);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = img.at(2 * x, 2 * y);
  return out;
}

inline ImageRGB center_crop(const ImageRGB& img, int crop_w, int crop_h) {
  if (crop_w > img.width() || crop_h > img.height())
    throw ImageTooSmall("center_crop: crop larger than image");
  const int x0 = (img.width() - crop_w) / 2;
  const int y0 = (img.height() - crop_h) / 2;
  ImageRGB out(crop_w, crop_h);
  for (int y = 0; y < crop_h; ++y)
    for (int x = 0; x < crop_w; ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
  return out;
}

// 3x3 Sobel responses, reflect101 borders. Used by the edge detector and the
// gradient feature bank.
inline ImagePlane sobel_x(const ImagePlane& img) {
  const int w = img.width(), h = img.height();
  ImagePlane out(w, h);
  auto px = [&](int x, int y) { return img.at(reflect101(x, w), reflect101(y, h)); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at(x, y) = (px(x + 1, y - 1) - px(x - 1, y - 1)) + 2.0 * (px(x + 1, y) - px(x - 1, y)) +
                     (px(x + 1, y + 1) - px(x - 1, y + 1));
  return out;
}

inline ImagePlane sobel_y(const ImagePlane& img) {
  const int w = img.width(), h = img.height();
  ImagePlane out(w, h);
  auto px = [&](int x, int y) { return img.at(reflect101(x, w), reflect101(y, h)); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at(x, y) = (px(x - 1, y + 1) - px(x - 1, y - 1)) + 2.0 * (px(x, y + 1) - px(x, y - 1)) +
                     (px(x + 1, y + 1) - px(x + 1, y - 1));
  return out;
}

}  // namespace demoire

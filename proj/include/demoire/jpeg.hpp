#pragma once

#include <array>
#include <cmath>

#include "demoire/color.hpp"
#include "demoire/image.hpp"

namespace demoire {

// Standard Annex-K quantization tables.
inline const std::array<int, 64>& jpeg_luma_table() {
  static const std::array<int, 64> t = {
      16, 11, 10, 16, 24,  40,  51,  61,   //
      12, 12, 14, 19, 26,  58,  60,  55,   //
      14, 13, 16, 24, 40,  57,  69,  56,   //
      14, 17, 22, 29, 51,  87,  80,  62,   //
      18, 22, 37, 56, 68,  109, 103, 77,   //
      24, 35, 55, 64, 81,  104, 113, 92,   //
      49, 64, 78, 87, 103, 121, 120, 101,  //
      72, 92, 95, 98, 112, 100, 103, 99};
  return t;
}

inline const std::array<int, 64>& jpeg_chroma_table() {
  static const std::array<int, 64> t = {
      17, 18, 24, 47, 99, 99, 99, 99,  //
      18, 21, 26, 66, 99, 99, 99, 99,  //
      24, 26, 56, 99, 99, 99, 99, 99,  //
      47, 66, 99, 99, 99, 99, 99, 99,  //
      99, 99, 99, 99, 99, 99, 99, 99,  //
      99, 99, 99, 99, 99, 99, 99, 99,  //
      99, 99, 99, 99, 99, 99, 99, 99,  //
      99, 99, 99, 99, 99, 99, 99, 99};
  return t;
}

// How the quantization knob maps onto the tables:
//   TableScale  - steps are table * factor (smaller factor = finer steps)
//   JpegQuality - factor is an encoder quality in (0, 100], IJG scaling
enum class QuantMode { TableScale, JpegQuality };

namespace detail {

// Orthonormal 8-point DCT-II basis: D[u][x] = a(u) cos((2x+1) u pi / 16).
inline const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto d = [] {
    std::array<std::array<double, 8>, 8> m;
    const double pi = 3.14159265358979323846;
    for (int u = 0; u < 8; ++u) {
      const double a = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) m[u][x] = a * std::cos((2 * x + 1) * u * pi / 16.0);
    }
    return m;
  }();
  return d;
}

inline void quantize_block(double block[8][8], const std::array<double, 64>& steps) {
  const auto& d = dct_basis();
  double tmp[8][8], coef[8][8];
  // rows then columns (separable forward DCT)
  for (int y = 0; y < 8; ++y)
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += d[u][x] * block[y][x];
      tmp[y][u] = s;
    }
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y) s += d[v][y] * tmp[y][u];
      coef[v][u] = s;
    }
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u) {
      const double step = steps[v * 8 + u];
      coef[v][u] = std::round(coef[v][u] / step) * step;
    }
  // inverse transform
  for (int y = 0; y < 8; ++y)
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int v = 0; v < 8; ++v) s += d[v][y] * coef[v][u];
      tmp[y][u] = s;
    }
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += d[u][x] * tmp[y][u];
      block[y][x] = s;
    }
}

inline std::array<double, 64> quant_steps(const std::array<int, 64>& table, double factor,
                                          QuantMode mode) {
  std::array<double, 64> steps;
  if (mode == QuantMode::TableScale) {
    for (int i = 0; i < 64; ++i) steps[i] = table[i] * factor;
  } else {
    const double q = factor < 1.0 ? 1.0 : (factor > 100.0 ? 100.0 : factor);
    const double s = q < 50.0 ? 5000.0 / q : 200.0 - 2.0 * q;
    for (int i = 0; i < 64; ++i) {
      double v = std::floor((table[i] * s + 50.0) / 100.0);
      steps[i] = v < 1.0 ? 1.0 : (v > 255.0 ? 255.0 : v);
    }
  }
  return steps;
}

inline void cycle_plane(ImagePlane& p, const std::array<double, 64>& steps) {
  const int w = p.width(), h = p.height();
  const int bw = (w + 7) / 8 * 8, bh = (h + 7) / 8 * 8;
  // pad to full blocks with the edge-repeating mirror, crop back afterwards
  ImagePlane padded(bw, bh);
  for (int y = 0; y < bh; ++y)
    for (int x = 0; x < bw; ++x) padded.at(x, y) = p.at(reflect_edge(x, w), reflect_edge(y, h));
  double block[8][8];
  for (int by = 0; by < bh; by += 8)
    for (int bx = 0; bx < bw; bx += 8) {
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) block[y][x] = padded.at(bx + x, by + y) - 128.0;
      quantize_block(block, steps);
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) padded.at(bx + x, by + y) = block[y][x] + 128.0;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) p.at(x, y) = padded.at(x, y);
}

}  // namespace detail

// One compression round trip: YCbCr, per-block DCT, quantize/dequantize with
// the Annex-K tables, inverse DCT, back to RGB. No chroma subsampling and no
// entropy coding; only the quantization noise survives. This is the noise
// injection stage of the synthesis pipeline.
inline ImageRGB jpeg_cycle(const ImageRGB& img, double quant_factor,
                           QuantMode mode = QuantMode::TableScale) {
  if (quant_factor <= 0.0)
    throw NonPositiveQuantFactor("jpeg_cycle: quantization factor must be > 0");
  ImageYCbCr ycc = rgb_to_ycbcr(img);
  ImagePlane y = ycc.channel(0), cb = ycc.channel(1), cr = ycc.channel(2);
  const auto luma_steps = detail::quant_steps(jpeg_luma_table(), quant_factor, mode);
  const auto chroma_steps = detail::quant_steps(jpeg_chroma_table(), quant_factor, mode);
  detail::cycle_plane(y, luma_steps);
  detail::cycle_plane(cb, chroma_steps);
  detail::cycle_plane(cr, chroma_steps);
  ImageYCbCr out(img.width(), img.height());
  for (int yy = 0; yy < img.height(); ++yy)
    for (int xx = 0; xx < img.width(); ++xx) {
      out.at(xx, yy, 0) = clamp255(y.at(xx, yy));
      out.at(xx, yy, 1) = clamp255(cb.at(xx, yy));
      out.at(xx, yy, 2) = clamp255(cr.at(xx, yy));
    }
  return ycbcr_to_rgb(out);
}

}  // namespace demoire

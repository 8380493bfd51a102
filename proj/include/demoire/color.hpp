#pragma once

#include "demoire/image.hpp"

namespace demoire {

// Full-range BT.601 (JPEG convention). Input channels in [0,1] are scaled to
// 0-255 before the matrix; outputs are clamped to [0,255].
inline ImageYCbCr rgb_to_ycbcr(const ImageRGB& img) {
  ImageYCbCr out(img.width(), img.height());
  const size_t n = img.pixel_count();
  const double* src = img.data().data();
  double* dst = out.data().data();
  for (size_t i = 0; i < n; ++i) {
    const double r = src[i * 3] * 255.0;
    const double g = src[i * 3 + 1] * 255.0;
    const double b = src[i * 3 + 2] * 255.0;
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const double cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
    const double cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
    dst[i * 3] = clamp255(y);
    dst[i * 3 + 1] = clamp255(cb);
    dst[i * 3 + 2] = clamp255(cr);
  }
  return out;
}

// Algebraic inverse of rgb_to_ycbcr: R and B from the exact step ratios
// 1.402 = 2(1-0.299) and 1.772 = 2(1-0.114), G back-solved from the luma
// equation. Output clamped to [0,1].
inline ImageRGB ycbcr_to_rgb(const ImageYCbCr& img) {
  ImageRGB out(img.width(), img.height());
  const size_t n = static_cast<size_t>(img.width()) * img.height();
  const double* src = img.data().data();
  double* dst = out.data().data();
  for (size_t i = 0; i < n; ++i) {
    const double y = src[i * 3];
    const double cb = src[i * 3 + 1] - 128.0;
    const double cr = src[i * 3 + 2] - 128.0;
    const double r = y + 1.402 * cr;
    const double b = y + 1.772 * cb;
    const double g = (y - 0.299 * r - 0.114 * b) / 0.587;
    dst[i * 3] = clamp01(r / 255.0);
    dst[i * 3 + 1] = clamp01(g / 255.0);
    dst[i * 3 + 2] = clamp01(b / 255.0);
  }
  return out;
}

// Luma of an RGB image on the [0,1] scale (same BT.601 weights).
inline ImagePlane luma(const ImageRGB& img) {
  ImagePlane out(img.width(), img.height());
  const size_t n = img.pixel_count();
  const double* src = img.data().data();
  double* dst = out.data().data();
  for (size_t i = 0; i < n; ++i)
    dst[i] = 0.299 * src[i * 3] + 0.587 * src[i * 3 + 1] + 0.114 * src[i * 3 + 2];
  return out;
}

}  // namespace demoire

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "demoire/error.hpp"
#include "demoire/filter.hpp"
#include "demoire/image.hpp"

namespace demoire {

inline double psnr(const ImageRGB& a, const ImageRGB& b, double max_val = 1.0) {
  if (!a.same_size(b)) throw DimensionMismatch("psnr: size mismatch");
  if (max_val <= 0.0) throw Error("psnr: max_val must be > 0");
  double mse = 0.0;
  const size_t n = a.pixel_count() * 3;
  for (size_t i = 0; i < n; ++i) {
    const double d = a.data()[i] - b.data()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(n);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(max_val * max_val / mse);
}

struct SsimConfig {
  int window = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

// Single-scale SSIM with the usual Gaussian window, per channel over fully
// interior window positions, averaged across positions and channels.
inline double ssim(const ImageRGB& a, const ImageRGB& b, const SsimConfig& cfg = {}) {
  if (!a.same_size(b)) throw DimensionMismatch("ssim: size mismatch");
  const int w = a.width(), h = a.height(), win = cfg.window;
  if (w < win || h < win) throw ImageTooSmall("ssim: image smaller than the window");

  std::vector<double> g(static_cast<size_t>(win) * win);
  const int r = win / 2;
  double sum = 0.0;
  for (int y = 0; y < win; ++y)
    for (int x = 0; x < win; ++x) {
      const double dx = x - r, dy = y - r;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.window_sigma * cfg.window_sigma));
      g[static_cast<size_t>(y) * win + x] = v;
      sum += v;
    }
  for (double& v : g) v /= sum;

  const double c1 = cfg.k1 * cfg.dynamic_range * cfg.k1 * cfg.dynamic_range;
  const double c2 = cfg.k2 * cfg.dynamic_range * cfg.k2 * cfg.dynamic_range;

  double acc = 0.0;
  size_t count = 0;
  for (int c = 0; c < 3; ++c)
    for (int y0 = 0; y0 + win <= h; ++y0)
      for (int x0 = 0; x0 + win <= w; ++x0) {
        double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
        for (int y = 0; y < win; ++y)
          for (int x = 0; x < win; ++x) {
            const double wgt = g[static_cast<size_t>(y) * win + x];
            const double va = a.at(x0 + x, y0 + y, c);
            const double vb = b.at(x0 + x, y0 + y, c);
            ma += wgt * va;
            mb += wgt * vb;
            saa += wgt * va * va;
            sbb += wgt * vb * vb;
            sab += wgt * va * vb;
          }
        const double var_a = saa - ma * ma;
        const double var_b = sbb - mb * mb;
        const double cov = sab - ma * mb;
        acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
        ++count;
      }
  return acc / static_cast<double>(count);
}

struct MetricReport {
  std::vector<double> per_image_psnr;
  std::vector<double> per_image_ssim;
  double psnr_db = 0.0;
  double ssim_mean = 0.0;

  void add(double p, double s) {
    per_image_psnr.push_back(p);
    per_image_ssim.push_back(s);
  }
  void finalize() {
    psnr_db = mean(per_image_psnr);
    ssim_mean = mean(per_image_ssim);
  }

 private:
  static double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
  }
};

}  // namespace demoire

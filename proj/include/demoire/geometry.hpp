#pragma once

#include <array>
#include <cmath>

#include "demoire/image.hpp"

namespace demoire {

// 3x3 projective transform, stored row-major, normalized so m[8] == 1.
class Homography {
 public:
  Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

  static Homography identity() { return Homography(); }

  static Homography from_matrix(const std::array<double, 9>& m) {
    Homography h;
    const double w = m[8];
    if (std::abs(w) < 1e-12) throw SingularHomography("from_matrix: element (3,3) is zero");
    for (int i = 0; i < 9; ++i) h.m_[i] = m[i] / w;
    h.check_invertible();
    return h;
  }

  static Homography translation(double tx, double ty) {
    return from_matrix({1, 0, tx, 0, 1, ty, 0, 0, 1});
  }

  // Exact 4-point solve: maps src[i] -> dst[i]. Standard DLT, 8x8 Gaussian
  // elimination with partial pivoting.
  static Homography from_correspondences(const std::array<std::array<double, 2>, 4>& src,
                                         const std::array<std::array<double, 2>, 4>& dst) {
    double a[8][9] = {};
    for (int i = 0; i < 4; ++i) {
      const double x = src[i][0], y = src[i][1];
      const double u = dst[i][0], v = dst[i][1];
      double* r0 = a[2 * i];
      double* r1 = a[2 * i + 1];
      r0[0] = x; r0[1] = y; r0[2] = 1; r0[6] = -u * x; r0[7] = -u * y; r0[8] = u;
      r1[3] = x; r1[4] = y; r1[5] = 1; r1[6] = -v * x; r1[7] = -v * y; r1[8] = v;
    }
    for (int col = 0; col < 8; ++col) {
      int pivot = col;
      for (int r = col + 1; r < 8; ++r)
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      if (std::abs(a[pivot][col]) < 1e-12)
        throw SingularHomography("from_correspondences: degenerate point configuration");
      if (pivot != col)
        for (int c = 0; c <= 8; ++c) std::swap(a[pivot][c], a[col][c]);
      for (int r = 0; r < 8; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (int c = col; c <= 8; ++c) a[r][c] -= f * a[col][c];
      }
    }
    std::array<double, 9> m;
    for (int i = 0; i < 8; ++i) m[i] = a[i][8] / a[i][i];
    m[8] = 1.0;
    return from_matrix(m);
  }

  double at(int row, int col) const { return m_[row * 3 + col]; }

  double determinant() const {
    return m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) -
           m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
           m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  }

  Homography inverse() const {
    const double det = determinant();
    if (std::abs(det) < 1e-9) throw SingularHomography("inverse: determinant below 1e-9");
    std::array<double, 9> adj;
    adj[0] = m_[4] * m_[8] - m_[5] * m_[7];
    adj[1] = m_[2] * m_[7] - m_[1] * m_[8];
    adj[2] = m_[1] * m_[5] - m_[2] * m_[4];
    adj[3] = m_[5] * m_[6] - m_[3] * m_[8];
    adj[4] = m_[0] * m_[8] - m_[2] * m_[6];
    adj[5] = m_[2] * m_[3] - m_[0] * m_[5];
    adj[6] = m_[3] * m_[7] - m_[4] * m_[6];
    adj[7] = m_[1] * m_[6] - m_[0] * m_[7];
    adj[8] = m_[0] * m_[4] - m_[1] * m_[3];
    Homography h;
    for (int i = 0; i < 9; ++i) h.m_[i] = adj[i] / det;
    const double w = h.m_[8];
    if (std::abs(w) > 1e-12)
      for (int i = 0; i < 9; ++i) h.m_[i] /= w;
    return h;
  }

  void apply(double x, double y, double& u, double& v) const {
    const double w = m_[6] * x + m_[7] * y + m_[8];
    u = (m_[0] * x + m_[1] * y + m_[2]) / w;
    v = (m_[3] * x + m_[4] * y + m_[5]) / w;
  }

  bool is_identity() const {
    static const double id[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    for (int i = 0; i < 9; ++i)
      if (m_[i] != id[i]) return false;
    return true;
  }

 private:
  void check_invertible() const {
    if (std::abs(determinant()) < 1e-9)
      throw SingularHomography("homography determinant below 1e-9");
  }
  double m_[9];
};

// Inverse-map warp: each output pixel samples the input at H^-1 (x, y),
// so the image content moves forward under H. Identity passes pixels through
// untouched.
inline ImageRGB warp_homography(const ImageRGB& img, const Homography& h) {
  if (h.is_identity()) return img;
  const Homography inv = h.inverse();
  ImageRGB out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double sx, sy;
      inv.apply(static_cast<double>(x), static_cast<double>(y), sx, sy);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = bilinear_at(img, sx, sy, c);
    }
  }
  return out;
}

// Solve r_d = r_s (1 + k1 r_s^2 + k2 r_s^4) for r_s by Newton iteration,
// at most 20 steps to tolerance 1e-8; falls back to r_s = r_d.
inline double invert_radial(double rd, double k1, double k2) {
  double r = rd;
  for (int i = 0; i < 20; ++i) {
    const double r2 = r * r;
    const double f = r * (1.0 + k1 * r2 + k2 * r2 * r2) - rd;
    if (std::abs(f) < 1e-8) return r;
    const double df = 1.0 + 3.0 * k1 * r2 + 5.0 * k2 * r2 * r2;
    if (std::abs(df) < 1e-12) break;
    r -= f / df;
  }
  const double r2 = r * r;
  if (std::abs(r * (1.0 + k1 * r2 + k2 * r2 * r2) - rd) < 1e-8) return r;
  return rd;
}

// Barrel/pincushion distortion via inverse mapping. Radii are normalized by
// the half-diagonal, so the corners sit at r = 1 and the k ranges stay
// comparable across image sizes. k1 = k2 = 0 passes pixels through untouched.
inline ImageRGB radial_distort(const ImageRGB& img, double k1, double k2) {
  if (k1 == 0.0 && k2 == 0.0) return img;
  const int w = img.width(), h = img.height();
  const double cx = (w - 1) * 0.5, cy = (h - 1) * 0.5;
  double scale = std::sqrt(cx * cx + cy * cy);
  if (scale <= 0.0) scale = 1.0;
  ImageRGB out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = (x - cx) / scale, dy = (y - cy) / scale;
      const double rd = std::sqrt(dx * dx + dy * dy);
      const double f = rd > 0.0 ? invert_radial(rd, k1, k2) / rd : 1.0;
      const double sx = cx + dx * f * scale;
      const double sy = cy + dy * f * scale;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = bilinear_at(img, sx, sy, c);
    }
  }
  return out;
}

}  // namespace demoire

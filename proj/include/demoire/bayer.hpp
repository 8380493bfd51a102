#pragma once

#include "demoire/image.hpp"

namespace demoire {

// Keep exactly one channel per pixel following the RGGB phase.
inline BayerRaster bayer_mosaic(const ImageRGB& img) {
  if (img.width() % 2 != 0 || img.height() % 2 != 0)
    throw OddDimensions("bayer_mosaic: dimensions must be even");
  BayerRaster out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      out.at(x, y) = img.at(x, y, BayerRaster::channel_at(x, y));
  return out;
}

// Bilinear reconstruction of the two missing channels at every site.
// Borders reflect with parity preserved (reflect101) so every tap lands on a
// site of the intended channel. Neighbor sums are paired so that a constant
// mosaic reconstructs to the same constant bit-exactly.
inline ImageRGB demosaic_bilinear(const BayerRaster& raster) {
  const int w = raster.width(), h = raster.height();
  ImageRGB out(w, h);

  auto px = [&](int x, int y) { return raster.at(reflect101(x, w), reflect101(y, h)); };
  auto cross4 = [&](int x, int y) {
    return ((px(x - 1, y) + px(x + 1, y)) + (px(x, y - 1) + px(x, y + 1))) * 0.25;
  };
  auto diag4 = [&](int x, int y) {
    return ((px(x - 1, y - 1) + px(x + 1, y + 1)) + (px(x + 1, y - 1) + px(x - 1, y + 1))) * 0.25;
  };
  auto horiz2 = [&](int x, int y) { return (px(x - 1, y) + px(x + 1, y)) * 0.5; };
  auto vert2 = [&](int x, int y) { return (px(x, y - 1) + px(x, y + 1)) * 0.5; };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int site = BayerRaster::channel_at(x, y);
      double r, g, b;
      switch (site) {
        case 0:  // R site: G on the cross, B on the diagonals
          r = raster.at(x, y);
          g = cross4(x, y);
          b = diag4(x, y);
          break;
        case 2:  // B site: G on the cross, R on the diagonals
          b = raster.at(x, y);
          g = cross4(x, y);
          r = diag4(x, y);
          break;
        default:  // G site: R/B alternate between row and column neighbors
          g = raster.at(x, y);
          if (y % 2 == 0) {  // R row
            r = horiz2(x, y);
            b = vert2(x, y);
          } else {  // B row
            r = vert2(x, y);
            b = horiz2(x, y);
          }
          break;
      }
      out.at(x, y, 0) = clamp01(r);
      out.at(x, y, 1) = clamp01(g);
      out.at(x, y, 2) = clamp01(b);
    }
  }
  return out;
}

}  // namespace demoire

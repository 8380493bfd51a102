#pragma once

#include <cstdint>

#include "demoire/bayer.hpp"
#include "demoire/color.hpp"
#include "demoire/filter.hpp"
#include "demoire/geometry.hpp"
#include "demoire/image.hpp"
#include "demoire/jpeg.hpp"
#include "demoire/rng.hpp"

namespace demoire {

enum class SubpixelLayout { VerticalRgbStripes };

// Every knob of the clean -> moire generator. A config plus a per-item seed
// fully determines the output.
struct SynthConfig {
  uint64_t seed = 0;
  SubpixelLayout subpixel_layout = SubpixelLayout::VerticalRgbStripes;
  double homography_jitter = 0.04;  // max corner displacement, fraction of extent
  double distortion_k1_min = -0.12, distortion_k1_max = 0.12;
  double distortion_k2_min = -0.02, distortion_k2_max = 0.02;
  double blur_sigma_min = 0.3, blur_sigma_max = 1.0;
  double jpeg_quant_factor = 0.5;
  QuantMode quant_mode = QuantMode::TableScale;
  int output_size = 256;

  void validate() const {
    if (distortion_k1_min > distortion_k1_max || distortion_k2_min > distortion_k2_max ||
        blur_sigma_min > blur_sigma_max)
      throw Error("SynthConfig: empty parameter range");
    if (blur_sigma_min <= 0.0) throw NonPositiveSigma("SynthConfig: blur sigma must be > 0");
    if (jpeg_quant_factor <= 0.0)
      throw NonPositiveQuantFactor("SynthConfig: quantization factor must be > 0");
    if (homography_jitter < 0.0) throw Error("SynthConfig: negative homography jitter");
    if (output_size < 64 || output_size % 2 != 0)
      throw Error("SynthConfig: output_size must be even and >= 64");
  }
};

struct MoirePair {
  ImageRGB clean;
  ImageRGB moire;
  SynthConfig config_snapshot;
  uint64_t per_item_seed = 0;
};

// Re-lay each pixel as three adjacent columns carrying its R, G and B values,
// emulating the vertical stripe geometry of an emissive display.
inline ImageRGB subpixel_expand(const ImageRGB& img) {
  ImageRGB out(img.width() * 3, img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      out.at(3 * x, y, 0) = img.at(x, y, 0);
      out.at(3 * x + 1, y, 1) = img.at(x, y, 1);
      out.at(3 * x + 2, y, 2) = img.at(x, y, 2);
    }
  return out;
}

// Shift the synthetic image's Cb/Cr planes so their global means match the
// reference. Luma is left untouched; only the color cast moves.
inline ImageRGB chroma_match(const ImageRGB& syn, const ImageRGB& ref) {
  if (!syn.same_size(ref)) throw DimensionMismatch("chroma_match: size mismatch");
  ImageYCbCr a = rgb_to_ycbcr(syn);
  const ImageYCbCr b = rgb_to_ycbcr(ref);
  double mean_cb_a = 0, mean_cr_a = 0, mean_cb_b = 0, mean_cr_b = 0;
  const size_t n = static_cast<size_t>(syn.width()) * syn.height();
  for (size_t i = 0; i < n; ++i) {
    mean_cb_a += a.data()[i * 3 + 1];
    mean_cr_a += a.data()[i * 3 + 2];
    mean_cb_b += b.data()[i * 3 + 1];
    mean_cr_b += b.data()[i * 3 + 2];
  }
  const double dcb = (mean_cb_b - mean_cb_a) / static_cast<double>(n);
  const double dcr = (mean_cr_b - mean_cr_a) / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    a.data()[i * 3 + 1] = clamp255(a.data()[i * 3 + 1] + dcb);
    a.data()[i * 3 + 2] = clamp255(a.data()[i * 3 + 2] + dcr);
  }
  return ycbcr_to_rgb(a);
}

namespace detail {

// Center-crop to the largest square and resize to the target side.
inline ImageRGB prepare_clean(const ImageRGB& clean, int side) {
  if (clean.width() < side || clean.height() < side)
    throw ImageTooSmall("synthesize_pair: clean image smaller than output_size");
  const int crop = clean.width() < clean.height() ? clean.width() : clean.height();
  return resize_bilinear(center_crop(clean, crop, crop), side, side);
}

}  // namespace detail

// The full generation chain. All randomness comes from the per-item stream;
// the draw order (eight corner offsets, k1, k2, sigma) is fixed so results
// are reproducible bit-for-bit.
inline MoirePair synthesize_pair(const ImageRGB& clean, const SynthConfig& cfg,
                                 uint64_t per_item_seed) {
  cfg.validate();
  const ImageRGB prepared = detail::prepare_clean(clean, cfg.output_size);

  Rng rng(per_item_seed);
  ImageRGB stage = subpixel_expand(prepared);
  const double ww = stage.width(), hh = stage.height();

  std::array<std::array<double, 2>, 4> src = {
      {{0.0, 0.0}, {ww - 1, 0.0}, {ww - 1, hh - 1}, {0.0, hh - 1}}};
  std::array<std::array<double, 2>, 4> dst = src;
  const double j = cfg.homography_jitter;
  for (int c = 0; c < 4; ++c) {
    dst[c][0] += rng.uniform(-j, j) * ww;
    dst[c][1] += rng.uniform(-j, j) * hh;
  }
  const double k1 = rng.uniform(cfg.distortion_k1_min, cfg.distortion_k1_max);
  const double k2 = rng.uniform(cfg.distortion_k2_min, cfg.distortion_k2_max);
  const double sigma = rng.uniform(cfg.blur_sigma_min, cfg.blur_sigma_max);

  stage = warp_homography(stage, Homography::from_correspondences(src, dst));
  stage = radial_distort(stage, k1, k2);
  stage = gaussian_blur(stage, sigma);
  stage = resize_bilinear(stage, cfg.output_size, cfg.output_size);
  // Exposure: each channel lights one of the three stripe columns, so the
  // integrating downsample sees a third of the original level. Gain of the
  // expansion factor restores it; saturated beats clip like a real sensor.
  for (double& v : stage.data()) v = clamp01(v * 3.0);
  stage = demosaic_bilinear(bayer_mosaic(stage));
  stage = jpeg_cycle(stage, cfg.jpeg_quant_factor, cfg.quant_mode);
  stage = chroma_match(stage, prepared);

  return MoirePair{prepared, stage, cfg, per_item_seed};
}

}  // namespace demoire

#pragma once

#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

#include "demoire/canny.hpp"
#include "demoire/color.hpp"
#include "demoire/error.hpp"
#include "demoire/filter.hpp"
#include "demoire/image.hpp"

namespace demoire {

struct LossWeights {
  double lambda_s = 10.0;
  double lambda_p = 1.0;
  double lambda_edge = 0.1;

  void validate() const {
    if (lambda_s < 0.0 || lambda_p < 0.0 || lambda_edge < 0.0)
      throw Error("LossWeights: weights must be >= 0");
  }
};

struct LossBreakdown {
  double basic = 0.0;
  double self_supervised = 0.0;
  double perceptual = 0.0;
  double edge = 0.0;
  double total = 0.0;
};

// Mean absolute difference over all pixels and channels. Mean, not sum, so
// the value does not scale with resolution.
inline double l1_loss(const ImageRGB& out, const ImageRGB& target) {
  if (!out.same_size(target)) throw DimensionMismatch("l1_loss: size mismatch");
  double acc = 0.0;
  const size_t n = out.pixel_count() * 3;
  for (size_t i = 0; i < n; ++i) acc += std::abs(out.data()[i] - target.data()[i]);
  return acc / static_cast<double>(n);
}

inline double mean_abs_diff(const ImagePlane& a, const ImagePlane& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw DimensionMismatch("mean_abs_diff: size mismatch");
  double acc = 0.0;
  const size_t n = a.data().size();
  for (size_t i = 0; i < n; ++i) acc += std::abs(a.data()[i] - b.data()[i]);
  return acc / static_cast<double>(n);
}

// Green-channel self-supervision on the intermediate image: the hinge pushes
// the G/R gap down toward the G/B gap, and vanishes once it is no larger.
// The symmetric variant averages the two gaps instead.
inline double self_supervised_loss(const ImageRGB& mid, bool symmetric = false) {
  double gr = 0.0, gb = 0.0;
  const size_t n = mid.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const double r = mid.data()[i * 3 + 0];
    const double g = mid.data()[i * 3 + 1];
    const double b = mid.data()[i * 3 + 2];
    gr += std::abs(g - r);
    gb += std::abs(g - b);
  }
  gr /= static_cast<double>(n);
  gb /= static_cast<double>(n);
  if (symmetric) return (gr + gb) / 2.0;
  const double d = gr - gb;
  return d > 0.0 ? d / 2.0 : 0.0;
}

// Mean absolute difference between the two binary edge maps. Zero-gradient
// almost everywhere; training uses a smooth surrogate instead (see net).
inline double edge_loss(const ImageRGB& out, const ImageRGB& target,
                        const CannyConfig& cfg = {}) {
  if (!out.same_size(target)) throw DimensionMismatch("edge_loss: size mismatch");
  return mean_abs_diff(canny(out, cfg), canny(target, cfg));
}

// Fixed, deterministic feature map for the perceptual term. Implementations
// must not mutate state in features().
class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;
  virtual std::vector<ImagePlane> features(const ImageRGB& img) const = 0;
};

// Raw channels as features; perceptual_loss then reduces to l1_loss.
class IdentityExtractor final : public FeatureExtractor {
 public:
  std::vector<ImagePlane> features(const ImageRGB& img) const override {
    return {img.channel(0), img.channel(1), img.channel(2)};
  }
};

// Sobel dx/dy of the luma at three dyadic scales: six planes that respond to
// structure rather than raw intensity.
class GradientBankExtractor final : public FeatureExtractor {
 public:
  explicit GradientBankExtractor(int scales = 3, double pyramid_sigma = 1.0)
      : scales_(scales), pyramid_sigma_(pyramid_sigma) {
    if (scales < 1) throw Error("GradientBankExtractor: need at least one scale");
  }

  std::vector<ImagePlane> features(const ImageRGB& img) const override {
    std::vector<ImagePlane> out;
    ImagePlane cur = luma(img);
    for (int s = 0; s < scales_; ++s) {
      out.push_back(sobel_x(cur));
      out.push_back(sobel_y(cur));
      if (s + 1 < scales_ && cur.width() >= 2 && cur.height() >= 2)
        cur = downsample2(gaussian_blur(cur, pyramid_sigma_));
    }
    return out;
  }

 private:
  int scales_;
  double pyramid_sigma_;
};

// L1 between corresponding feature planes, averaged over planes.
inline double perceptual_loss(const ImageRGB& out, const ImageRGB& target,
                              const FeatureExtractor& fx) {
  if (!out.same_size(target)) throw DimensionMismatch("perceptual_loss: size mismatch");
  const std::vector<ImagePlane> fa = fx.features(out);
  const std::vector<ImagePlane> fb = fx.features(target);
  if (fa.size() != fb.size() || fa.empty())
    throw ShapeMismatch("perceptual_loss: extractor plane count mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < fa.size(); ++i) acc += mean_abs_diff(fa[i], fb[i]);
  return acc / static_cast<double>(fa.size());
}

// Weighted sum of the four terms. The self-supervised term reads the
// intermediate image; everything else compares the final output to target.
inline LossBreakdown total_loss(const ImageRGB& out, const ImageRGB& mid,
                                const ImageRGB& target, const LossWeights& w,
                                const FeatureExtractor& fx, const CannyConfig& canny_cfg = {},
                                bool symmetric_self = false) {
  w.validate();
  LossBreakdown lb;
  lb.basic = l1_loss(out, target);
  lb.self_supervised = self_supervised_loss(mid, symmetric_self);
  lb.perceptual = perceptual_loss(out, target, fx);
  lb.edge = edge_loss(out, target, canny_cfg);
  lb.total = lb.basic + w.lambda_s * lb.self_supervised + w.lambda_p * lb.perceptual +
             w.lambda_edge * lb.edge;
  return lb;
}

}  // namespace demoire

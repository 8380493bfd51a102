#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "demoire/canny.hpp"
#include "demoire/losses.hpp"
#include "demoire/procgen.hpp"
#include "demoire/rng.hpp"

using namespace demoire;

namespace {

ImageRGB constant_rgb(int w, int h, double r, double g, double b) {
  ImageRGB img(w, h);
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    img.data()[i * 3 + 0] = r;
    img.data()[i * 3 + 1] = g;
    img.data()[i * 3 + 2] = b;
  }
  return img;
}

ImageRGB step_image(int w, int h, int c) {
  ImageRGB img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < 3; ++ch) img.at(x, y, ch) = x >= c ? 0.8 : 0.2;
  return img;
}

ImageRGB random_image(int w, int h, uint64_t seed) {
  Rng rng(seed);
  ImageRGB img(w, h);
  for (double& v : img.data()) v = rng.uniform();
  return img;
}

}  // namespace

TEST_CASE("l1 loss of identical images is zero", "[losses]") {
  const ImageRGB img = random_image(16, 16, 1);
  CHECK(l1_loss(img, img) == 0.0);
}

TEST_CASE("constant offset gives that offset as l1", "[losses]") {
  const ImageRGB a = constant_rgb(8, 8, 0.5, 0.5, 0.5);
  const ImageRGB b = constant_rgb(8, 8, 0.75, 0.75, 0.75);
  CHECK(l1_loss(a, b) == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("l1 matches a scalar-loop oracle", "[losses]") {
  for (uint64_t s = 0; s < 10; ++s) {
    const ImageRGB a = random_image(13, 9, 100 + s);
    const ImageRGB b = random_image(13, 9, 200 + s);
    double acc = 0.0;
    size_t n = 0;
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 13; ++x)
        for (int c = 0; c < 3; ++c) {
          acc += std::abs(a.at(x, y, c) - b.at(x, y, c));
          ++n;
        }
    REQUIRE(l1_loss(a, b) == Catch::Approx(acc / n).margin(1e-7));
  }
}

TEST_CASE("l1 obeys the triangle inequality", "[losses]") {
  const ImageRGB a = random_image(12, 12, 31);
  const ImageRGB b = random_image(12, 12, 32);
  const ImageRGB c = random_image(12, 12, 33);
  CHECK(l1_loss(a, c) <= l1_loss(a, b) + l1_loss(b, c) + 1e-12);
}

TEST_CASE("l1 rejects size mismatches", "[losses]") {
  CHECK_THROWS_AS(l1_loss(ImageRGB(4, 4), ImageRGB(5, 4)), DimensionMismatch);
}

TEST_CASE("gray images have zero self-supervised loss", "[losses]") {
  CHECK(self_supervised_loss(constant_rgb(8, 8, 0.4, 0.4, 0.4)) == 0.0);
}

TEST_CASE("self-supervised loss evaluates the hinge literally", "[losses]") {
  // |G-R| = 0.05 and |G-B| = 0.03 everywhere.
  const ImageRGB a = constant_rgb(8, 8, 0.5, 0.55, 0.52);
  CHECK(self_supervised_loss(a) == Catch::Approx(0.01).margin(1e-12));
  // Swapped gaps: the positive part clamps to zero.
  const ImageRGB b = constant_rgb(8, 8, 0.52, 0.55, 0.5);
  CHECK(self_supervised_loss(b) == 0.0);
}

TEST_CASE("symmetric variant averages the two gaps", "[losses]") {
  const ImageRGB a = constant_rgb(8, 8, 0.5, 0.55, 0.52);
  CHECK(self_supervised_loss(a, true) == Catch::Approx(0.04).margin(1e-12));
}

TEST_CASE("self-supervised loss is invariant under pixel permutation", "[losses]") {
  const ImageRGB img = random_image(10, 10, 41);
  std::vector<size_t> perm(img.pixel_count());
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(42);
  for (size_t i = perm.size() - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.uniform_int(0, static_cast<int64_t>(i))]);
  ImageRGB shuffled(10, 10);
  for (size_t i = 0; i < perm.size(); ++i)
    for (int c = 0; c < 3; ++c) shuffled.data()[i * 3 + c] = img.data()[perm[i] * 3 + c];
  CHECK(self_supervised_loss(shuffled) == Catch::Approx(self_supervised_loss(img)).margin(1e-12));
}

TEST_CASE("hinge stays zero whenever the red gap is smaller", "[losses]") {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    ImageRGB img(6, 6);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
      const double g = rng.uniform(0.3, 0.7);
      const double dr = rng.uniform(0.0, 0.05);
      const double db = dr + rng.uniform(0.0, 0.1);
      img.data()[i * 3 + 0] = g - dr;
      img.data()[i * 3 + 1] = g;
      img.data()[i * 3 + 2] = g - db;
    }
    REQUIRE(self_supervised_loss(img) == 0.0);
  }
}

TEST_CASE("canny of a constant image is empty", "[losses]") {
  const ImagePlane edges = canny(constant_rgb(32, 32, 0.5, 0.5, 0.5));
  for (double v : edges.data()) REQUIRE(v == 0.0);
}

TEST_CASE("canny thins a vertical step to a single column", "[losses]") {
  const ImageRGB img = step_image(32, 16, 16);
  const ImagePlane edges = canny(img);
  std::vector<int> column_counts(32, 0);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 32; ++x)
      if (edges.at(x, y) != 0.0) ++column_counts[x];
  int nonzero_columns = 0, edge_col = -1;
  for (int x = 0; x < 32; ++x)
    if (column_counts[x] > 0) {
      ++nonzero_columns;
      edge_col = x;
    }
  REQUIRE(nonzero_columns == 1);
  CHECK(column_counts[edge_col] == 16);
  CHECK(edge_col >= 15);
  CHECK(edge_col <= 17);
}

TEST_CASE("canny output is strictly binary", "[losses]") {
  const ImagePlane edges = canny(random_image(24, 24, 61));
  for (double v : edges.data()) REQUIRE((v == 0.0 || v == 1.0));
}

TEST_CASE("canny depends only on luma", "[losses]") {
  // Same Y plane, different flat chroma.
  ImageYCbCr a(24, 24), b(24, 24);
  Rng rng(62);
  for (size_t i = 0; i < 24u * 24u; ++i) {
    const double y = rng.uniform(80.0, 180.0);
    a.data()[i * 3 + 0] = y;
    a.data()[i * 3 + 1] = 128.0;
    a.data()[i * 3 + 2] = 128.0;
    b.data()[i * 3 + 0] = y;
    b.data()[i * 3 + 1] = 140.0;
    b.data()[i * 3 + 2] = 115.0;
  }
  const ImagePlane ea = canny(ycbcr_to_rgb(a));
  const ImagePlane eb = canny(ycbcr_to_rgb(b));
  for (size_t i = 0; i < ea.data().size(); ++i) REQUIRE(ea.data()[i] == eb.data()[i]);
}

TEST_CASE("canny rejects bad thresholds", "[losses]") {
  const ImageRGB img = random_image(16, 16, 63);
  CHECK_THROWS_AS(canny(img, CannyConfig{1.4, 0.3, 0.2}), BadThresholds);
  CHECK_THROWS_AS(canny(img, CannyConfig{1.4, 0.0, 0.2}), BadThresholds);
  CHECK_THROWS_AS(canny(img, CannyConfig{1.4, 0.1, 1.2}), BadThresholds);
  CHECK_THROWS_AS(canny(img, CannyConfig{-1.0, 0.1, 0.2}), NonPositiveSigma);
}

TEST_CASE("edge loss vanishes for identical images and is symmetric", "[losses]") {
  const ImageRGB a = step_image(32, 16, 10);
  const ImageRGB b = random_image(32, 16, 64);
  CHECK(edge_loss(a, a) == 0.0);
  CHECK(edge_loss(a, b) == Catch::Approx(edge_loss(b, a)).margin(1e-12));
}

TEST_CASE("one missing edge column costs 1/W", "[losses]") {
  const int w = 32, h = 16;
  const ImageRGB target = step_image(w, h, 16);
  const ImageRGB out = constant_rgb(w, h, 0.5, 0.5, 0.5);
  // The step's edge plane is a single full-height column (verified above).
  CHECK(edge_loss(out, target) == Catch::Approx(1.0 / w).margin(1e-12));
}

TEST_CASE("perceptual loss vanishes only for matching features", "[losses]") {
  const ImageRGB sharp = procedural_image(32, 32, 71);
  const GradientBankExtractor bank;
  CHECK(perceptual_loss(sharp, sharp, bank) == 0.0);
  const ImageRGB blurred = gaussian_blur(sharp, 2.0);
  CHECK(perceptual_loss(blurred, sharp, bank) > 0.0);
}

TEST_CASE("identity extractor reduces perceptual loss to l1", "[losses]") {
  const ImageRGB a = random_image(12, 12, 72);
  const ImageRGB b = random_image(12, 12, 73);
  const IdentityExtractor id;
  CHECK(perceptual_loss(a, b, id) == Catch::Approx(l1_loss(a, b)).margin(1e-12));
}

TEST_CASE("gradient bank emits six planes at dyadic scales", "[losses]") {
  const GradientBankExtractor bank;
  const auto planes = bank.features(procedural_image(32, 32, 74));
  REQUIRE(planes.size() == 6);
  CHECK(planes[0].width() == 32);
  CHECK(planes[2].width() == 16);
  CHECK(planes[4].width() == 8);
}

TEST_CASE("total loss composes the weighted sum", "[losses]") {
  const ImageRGB target = procedural_image(32, 32, 81);
  const ImageRGB out = random_image(32, 32, 82);
  const ImageRGB mid = random_image(32, 32, 83);
  const LossWeights w;
  const GradientBankExtractor bank;
  const LossBreakdown lb = total_loss(out, mid, target, w, bank);
  CHECK(lb.basic >= 0.0);
  CHECK(lb.self_supervised >= 0.0);
  CHECK(lb.perceptual >= 0.0);
  CHECK(lb.edge >= 0.0);
  CHECK(lb.total ==
        Catch::Approx(lb.basic + 10.0 * lb.self_supervised + 1.0 * lb.perceptual + 0.1 * lb.edge)
            .margin(1e-9));
}

TEST_CASE("perfect output with achromatic mid gives zero total", "[losses]") {
  const ImageRGB target = procedural_image(32, 32, 84);
  const ImageRGB mid = constant_rgb(32, 32, 0.5, 0.5, 0.5);
  const GradientBankExtractor bank;
  const LossBreakdown lb = total_loss(target, mid, target, LossWeights{}, bank);
  CHECK(lb.total == 0.0);
}

TEST_CASE("paper weights turn component values into 0.405", "[losses]") {
  const LossWeights w;
  const double total = 0.1 + w.lambda_s * 0.01 + w.lambda_p * 0.2 + w.lambda_edge * 0.05;
  CHECK(total == Catch::Approx(0.405).margin(1e-12));
}

TEST_CASE("zero weights leave only the basic term", "[losses]") {
  const ImageRGB target = procedural_image(32, 32, 85);
  const ImageRGB out = random_image(32, 32, 86);
  const ImageRGB mid = random_image(32, 32, 87);
  const GradientBankExtractor bank;
  const LossBreakdown lb = total_loss(out, mid, target, LossWeights{0.0, 0.0, 0.0}, bank);
  CHECK(lb.total == Catch::Approx(lb.basic).margin(1e-12));
  CHECK(lb.basic == Catch::Approx(l1_loss(out, target)).margin(1e-12));
}

TEST_CASE("negative weights are rejected", "[losses]") {
  const ImageRGB img = procedural_image(32, 32, 88);
  const GradientBankExtractor bank;
  CHECK_THROWS_AS(total_loss(img, img, img, LossWeights{-1.0, 0.0, 0.0}, bank), Error);
}

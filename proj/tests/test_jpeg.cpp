#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "demoire/color.hpp"
#include "demoire/jpeg.hpp"
#include "demoire/metrics.hpp"
#include "demoire/rng.hpp"

using namespace demoire;

namespace {

// Fully independent second implementation: direct O(64^2) DCT sums, the
// Annex-K tables typed afresh, same level shift and rounding contract.
const int kRefLuma[64] = {16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
                          14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
                          18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
                          49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
const int kRefChroma[64] = {17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
                            24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
                            99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
                            99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

void ref_quantize_block(double block[64], const int* table, double factor) {
  const double pi = 3.141592653589793;
  double coef[64];
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
          s += block[y * 8 + x] * std::cos((2 * y + 1) * u * pi / 16.0) *
               std::cos((2 * x + 1) * v * pi / 16.0);
      const double au = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      const double av = v == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      s *= au * av;
      const double step = table[u * 8 + v] * factor;
      coef[u * 8 + v] = std::round(s / step) * step;
    }
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
          const double au = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
          const double av = v == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
          s += au * av * coef[u * 8 + v] * std::cos((2 * y + 1) * u * pi / 16.0) *
               std::cos((2 * x + 1) * v * pi / 16.0);
        }
      block[y * 8 + x] = s;
    }
}

ImageRGB ref_jpeg_cycle(const ImageRGB& img, double factor) {
  ImageYCbCr ycc = rgb_to_ycbcr(img);
  const int w = img.width(), h = img.height();
  REQUIRE(w % 8 == 0);
  REQUIRE(h % 8 == 0);
  for (int plane = 0; plane < 3; ++plane) {
    const int* table = plane == 0 ? kRefLuma : kRefChroma;
    for (int by = 0; by < h; by += 8)
      for (int bx = 0; bx < w; bx += 8) {
        double block[64];
        for (int y = 0; y < 8; ++y)
          for (int x = 0; x < 8; ++x) block[y * 8 + x] = ycc.at(bx + x, by + y, plane) - 128.0;
        ref_quantize_block(block, table, factor);
        for (int y = 0; y < 8; ++y)
          for (int x = 0; x < 8; ++x)
            ycc.at(bx + x, by + y, plane) = clamp255(block[y * 8 + x] + 128.0);
      }
  }
  return ycbcr_to_rgb(ycc);
}

}  // namespace

TEST_CASE("quantization tables carry the standard entries", "[jpeg]") {
  const auto& luma = jpeg_luma_table();
  const auto& chroma = jpeg_chroma_table();
  for (int i = 0; i < 64; ++i) {
    REQUIRE(luma[i] == kRefLuma[i]);
    REQUIRE(chroma[i] == kRefChroma[i]);
  }
}

TEST_CASE("constant gray survives the cycle up to DC rounding", "[jpeg]") {
  ImageRGB img(16, 16);
  for (double& v : img.data()) v = 0.5;
  const ImageRGB out = jpeg_cycle(img, 0.5);
  // Only the DC coefficient can move, by at most half a quantization step.
  const double bound = (16.0 * 0.5 / 2.0) / 255.0;
  for (size_t i = 0; i < img.data().size(); ++i)
    REQUIRE(std::abs(out.data()[i] - img.data()[i]) <= bound + 1e-9);
}

TEST_CASE("vanishing quantization factor approaches identity", "[jpeg]") {
  Rng rng(3);
  ImageRGB img(16, 8);
  for (double& v : img.data()) v = rng.uniform(0.2, 0.8);
  const ImageRGB out = jpeg_cycle(img, 1e-6);
  for (size_t i = 0; i < img.data().size(); ++i)
    REQUIRE(std::abs(out.data()[i] - img.data()[i]) < 1e-3);
}

TEST_CASE("checkerboard cycle matches the independent oracle", "[jpeg]") {
  ImageRGB img(16, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = (x + y) % 2 ? 0.85 : 0.15;
  const ImageRGB mine = jpeg_cycle(img, 0.5);
  const ImageRGB ref = ref_jpeg_cycle(img, 0.5);

  double differs = 0.0;
  for (size_t i = 0; i < img.data().size(); ++i) {
    REQUIRE(std::abs(mine.data()[i] - ref.data()[i]) < 1e-4);
    differs = std::max(differs, std::abs(mine.data()[i] - img.data()[i]));
  }
  CHECK(differs > 1e-3);  // compression visibly changed a high-frequency input
  const double p = psnr(mine, img);
  CHECK(std::isfinite(p));
}

TEST_CASE("random images agree with the oracle at several factors", "[jpeg]") {
  Rng rng(9);
  for (double factor : {0.25, 0.5, 2.0}) {
    ImageRGB img(24, 16);
    for (double& v : img.data()) v = rng.uniform();
    const ImageRGB mine = jpeg_cycle(img, factor);
    const ImageRGB ref = ref_jpeg_cycle(img, factor);
    for (size_t i = 0; i < img.data().size(); ++i)
      REQUIRE(std::abs(mine.data()[i] - ref.data()[i]) < 1e-4);
  }
}

TEST_CASE("non multiple-of-8 sizes pad and crop back cleanly", "[jpeg]") {
  Rng rng(5);
  ImageRGB img(14, 10);
  for (double& v : img.data()) v = rng.uniform(0.3, 0.7);
  const ImageRGB out = jpeg_cycle(img, 0.5);
  REQUIRE(out.width() == 14);
  REQUIRE(out.height() == 10);
  for (double v : out.data()) {
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
  // Mild factor on a smooth image stays close to the input.
  for (size_t i = 0; i < img.data().size(); ++i)
    REQUIRE(std::abs(out.data()[i] - img.data()[i]) < 0.1);
}

TEST_CASE("quality-50 mode equals table scale at factor 1", "[jpeg]") {
  Rng rng(13);
  ImageRGB img(16, 16);
  for (double& v : img.data()) v = rng.uniform();
  const ImageRGB a = jpeg_cycle(img, 1.0, QuantMode::TableScale);
  const ImageRGB b = jpeg_cycle(img, 50.0, QuantMode::JpegQuality);
  for (size_t i = 0; i < img.data().size(); ++i) REQUIRE(a.data()[i] == b.data()[i]);
}

TEST_CASE("quantization factor must be positive", "[jpeg]") {
  CHECK_THROWS_AS(jpeg_cycle(ImageRGB(8, 8), 0.0), NonPositiveQuantFactor);
  CHECK_THROWS_AS(jpeg_cycle(ImageRGB(8, 8), -0.5), NonPositiveQuantFactor);
}

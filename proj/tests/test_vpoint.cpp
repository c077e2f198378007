#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "synthetic.hpp"
#include "vpsal/errors.hpp"
#include "vpsal/fusion.hpp"
#include "vpsal/vpoint.hpp"

using namespace vpsal;

TEST(VpAnnotation, CenterAndValidation) {
  EXPECT_EQ(vp_center(VpAnnotation::checked({10, 20, 30, 40}, 100, 100)), (Point{25, 40}));
  EXPECT_THROW(VpAnnotation::checked({10, 20, 0.5, 40}, 100, 100), InvalidArgument);
  EXPECT_THROW(VpAnnotation::checked({200, 20, 10, 10}, 100, 100), InvalidArgument);
  // partially outside is fine
  EXPECT_NO_THROW(VpAnnotation::checked({-5, -5, 10, 10}, 100, 100));
}

TEST(Ratio, PublishedWindowPairs) {
  const std::pair<double, double> pairs[] = {{40, 0.1},   {69, 0.1725}, {46, 0.115}, {32, 0.08},
                                             {26, 0.065}, {37, 0.0925}, {36, 0.09},  {400, 1.0}};
  for (auto [len, ratio] : pairs) {
    EXPECT_DOUBLE_EQ(ratio_of(len, 400), ratio) << len;
    EXPECT_DOUBLE_EQ(VpWindow(len).ratio(), ratio) << len;
  }
  EXPECT_THROW(ratio_of(0, 400), InvalidArgument);
  EXPECT_THROW(ratio_of(10, -1), InvalidArgument);
}

TEST(VpWindow, ValidatesAndScales) {
  EXPECT_THROW(VpWindow(0.5), InvalidArgument);
  EXPECT_THROW(VpWindow(401), InvalidArgument);
  const VpWindow w = VpWindow(40).scaled_to(800);
  EXPECT_DOUBLE_EQ(w.length_px(), 80.0);
  EXPECT_DOUBLE_EQ(w.ratio(), 0.1);
  EXPECT_DOUBLE_EQ(VpWindow(8).scaled_to(20).length_px(), 1.0);
}

TEST(VpShape, ParseRoundTrip) {
  for (auto s : {VpShape::square, VpShape::circle, VpShape::gaussian}) EXPECT_EQ(parse_vp_shape(to_string(s)), s);
  EXPECT_THROW(parse_vp_shape("hexagon"), InvalidArgument);
}

TEST(VpMap, SquareCoversPixelCentersInHalfOpenWindow) {
  const Grid2D m = build_vp_map({2, 2}, VpWindow(2), VpShape::square, 5, 5);
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t x = 0; x < 5; ++x) {
      const bool inside = (x == 1 || x == 2) && (y == 1 || y == 2);
      EXPECT_EQ(m(x, y), inside ? 1.0 : 0.0) << x << "," << y;
    }
}

TEST(VpMap, ClippedAtCorner) {
  const Grid2D m = build_vp_map({0, 0}, VpWindow(4), VpShape::square, 5, 5);
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t x = 0; x < 5; ++x) EXPECT_EQ(m(x, y), x < 2 && y < 2 ? 1.0 : 0.0) << x << "," << y;
}

TEST(VpMap, GaussianDecreasesFromCenter) {
  const Grid2D g = build_vp_map({20.5, 20.5}, VpWindow(10), VpShape::gaussian, 41, 41);
  EXPECT_EQ(g(20, 20), 1.0);
  for (std::size_t d = 1; d < 20; ++d) {
    EXPECT_LT(g(20 + d, 20), g(20 + d - 1, 20));
    EXPECT_LT(g(20 + d, 20 + d), g(20 + d - 1, 20 + d - 1));
  }
}

TEST(VpMap, CircleAndGaussian) {
  const Grid2D c = build_vp_map({10, 10}, VpWindow(6), VpShape::circle, 20, 20);
  EXPECT_EQ(c(9, 9), 1.0);
  EXPECT_EQ(c(12, 9), 1.0);  // center distance 2.55
  EXPECT_EQ(c(13, 9), 0.0);  // center distance 3.54
  EXPECT_LE(c.sum(), 36.0);

  const Grid2D g = build_vp_map({10.5, 7.5}, VpWindow(8), VpShape::gaussian, 21, 15);
  EXPECT_EQ(argmax(g), 7u * 21u + 10u);
  EXPECT_EQ(g.max(), 1.0);
  EXPECT_EQ(g.min(), 0.0);
}

TEST(VpMap, MassBoundedByWindowArea) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const double len = 1.0 + u(rng) / 3.0;
    const Grid2D m = build_vp_map({u(rng), u(rng)}, VpWindow(len), VpShape::square, 60, 60);
    EXPECT_LE(m.sum(), std::ceil(len) * std::ceil(len));
    for (double v : m.values()) EXPECT_TRUE(v == 0.0 || v == 1.0);
  }
  // fully inside with integer length: exactly L^2
  for (double len : {1.0, 4.0, 7.0, 20.0}) {
    EXPECT_EQ(build_vp_map({30.3, 29.9}, VpWindow(len), VpShape::square, 60, 60).sum(), len * len);
  }
}

TEST(VpMap, TranslationEquivariant) {
  const Grid2D a = build_vp_map({20, 15}, VpWindow(9), VpShape::circle, 64, 48);
  const Grid2D b = build_vp_map({27, 19}, VpWindow(9), VpShape::circle, 64, 48);
  for (std::size_t y = 0; y + 4 < 48; ++y)
    for (std::size_t x = 0; x + 7 < 64; ++x) EXPECT_EQ(a(x, y), b(x + 7, y + 4));
}

TEST(VpMap, RejectsFarOutsideCenter) {
  // diagonal 50, quarter 12.5
  EXPECT_NO_THROW(build_vp_map({-12, 20}, VpWindow(4), VpShape::square, 40, 30));
  EXPECT_THROW(build_vp_map({-13, 20}, VpWindow(4), VpShape::square, 40, 30), InvalidArgument);
  EXPECT_THROW(build_vp_map({20, 43}, VpWindow(4), VpShape::square, 40, 30), InvalidArgument);
}

TEST(VpMap, SeparableBlurMatchesDense) {
  for (auto shape : {VpShape::square, VpShape::gaussian, VpShape::circle}) {
    const Point c{33.3, 21.7};
    const VpWindow win(14, 90);
    const Grid2D dense = gaussian_blur(build_vp_map(c, win, shape, 90, 60), 3.6);
    const Grid2D fast = blurred_vp_map(c, win, shape, 90, 60, 3.6);
    for (std::size_t i = 0; i < dense.size(); ++i) EXPECT_NEAR(fast.values()[i], dense.values()[i], 1e-12);
  }
}

TEST(Otsu, SeparatesBimodalHistogram) {
  Grid2D g(10, 10, 0.1);
  for (std::size_t i = 0; i < 50; ++i) g.values()[i] = 0.9;
  const double t = detail::otsu_threshold(g);
  EXPECT_GT(t, 0.1);
  EXPECT_LT(t, 0.9);
}

TEST(DetectVp, EightConvergingLines) {
  const Grid2D img =
      synth::converging_lines(256, 256, {128, 100}, {20, 65, 110, 155, 200, 245, 290, 335}, 1.0, 1.5);
  const VpDetection d = detect_vp(img);
  EXPECT_LT(std::hypot(d.point.x - 128, d.point.y - 100), 8.0);
  EXPECT_GT(d.confidence, 0.0);
  EXPECT_LE(d.confidence, 1.0);
}

TEST(DetectVp, TwoLinesHaveOneIntersection) {
  Grid2D img(100, 100);
  synth::draw_segment(img, {50 - 80 * std::cos(0.6), 50 - 80 * std::sin(0.6)},
                        {50 + 80 * std::cos(0.6), 50 + 80 * std::sin(0.6)}, 1.0);
  synth::draw_segment(img, {50 - 80 * std::cos(2.2), 50 - 80 * std::sin(2.2)},
                        {50 + 80 * std::cos(2.2), 50 + 80 * std::sin(2.2)}, 1.0);
  const VpDetection d = detect_vp(img);
  EXPECT_NEAR(d.point.x, 50.0, 4.0);
  EXPECT_NEAR(d.point.y, 50.0, 4.0);
  EXPECT_DOUBLE_EQ(d.confidence, 1.0);
}

TEST(DetectVp, BlankAndTinyImages) {
  EXPECT_THROW(detect_vp(Grid2D(128, 128, 0.3)), NoDetectionError);
  EXPECT_THROW(detect_vp(Grid2D(32, 128, 0.3)), InvalidArgument);
}

TEST(DetectVp, InvariantToBrightnessScaling) {
  const Grid2D img = synth::converging_lines(200, 160, {90, 70}, {30, 80, 140, 215, 300}, 1.0, 1.5);
  const VpDetection ref = detect_vp(img);
  for (double gain : {0.4, 0.75, 3.0}) {
    Grid2D scaled = img;
    for (double& v : scaled.values()) v *= gain;
    const VpDetection d = detect_vp(scaled);
    EXPECT_EQ(d.point, ref.point) << gain;
    EXPECT_EQ(d.confidence, ref.confidence) << gain;
  }
  EXPECT_EQ(detect_vp(img).point, ref.point);
}

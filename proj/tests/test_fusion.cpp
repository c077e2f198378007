#include <gtest/gtest.h>

#include <random>

#include "synthetic.hpp"
#include "vpsal/errors.hpp"
#include "vpsal/fusion.hpp"

using namespace vpsal;

namespace {

Grid2D random_grid(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid2D g(w, h);
  for (double& v : g.values()) v = u(rng);
  return g;
}

}  // namespace

TEST(Combine, EndpointsAreExact) {
  const Grid2D s = random_grid(30, 20, 1);
  const Grid2D vp = random_grid(30, 20, 2);
  EXPECT_EQ(combine(s, vp, 1.0), s);
  EXPECT_EQ(combine(s, vp, 0.0), vp);
}

TEST(Combine, MidpointArithmetic) {
  const Grid2D out = combine(Grid2D(1, 1, 0.8), Grid2D(1, 1, 0.2), 0.642);
  EXPECT_NEAR(out(0, 0), 0.5852, 1e-12);
}

TEST(Combine, MonotoneInAlphaAndComplementary) {
  const Grid2D s = random_grid(12, 9, 3);
  const Grid2D vp = random_grid(12, 9, 4);
  for (double a = 0.0; a < 0.95; a += 0.1) {
    const Grid2D lo = combine(s, vp, a);
    const Grid2D hi = combine(s, vp, a + 0.05);
    const Grid2D swapped = combine(vp, s, 1.0 - a);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double ds = s.values()[i] - vp.values()[i];
      const double step = hi.values()[i] - lo.values()[i];
      EXPECT_TRUE(ds >= 0 ? step >= -1e-15 : step <= 1e-15);
      EXPECT_NEAR(swapped.values()[i], lo.values()[i], 1e-14);
    }
  }
}

TEST(Combine, RejectsBadInput) {
  EXPECT_THROW(combine(Grid2D(2, 2), Grid2D(3, 2), 0.5), InvalidArgument);
  EXPECT_THROW(combine(Grid2D(2, 2), Grid2D(2, 2), 1.5), InvalidArgument);
  EXPECT_THROW(combine(Grid2D(2, 2), Grid2D(2, 2), -0.1), InvalidArgument);
}

TEST(FusionParams, NativeScaling) {
  FusionParams p;
  EXPECT_DOUBLE_EQ(p.smooth_sigma, 16.0);
  EXPECT_DOUBLE_EQ(p.native_sigma(800, 600), 32.0);
  EXPECT_DOUBLE_EQ(p.native_window(300, 800).length_px(), 80.0);
  p.smooth_sigma = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Predict, AlphaOneIsSaliencyPath) {
  const Grid2D img = random_grid(120, 90, 5);
  const SaliencyMap s = spectral_residual(img);
  FusionParams p;
  p.alpha = 1.0;
  const FusedMap f = predict(img, s, {60, 45}, p);
  EXPECT_EQ(f.grid, smoothed_saliency(s, p));
  EXPECT_EQ(f.model, s.model());
}

TEST(Predict, AlphaZeroIsVpPath) {
  const Grid2D img = random_grid(120, 90, 6);
  const SaliencyMap s = spectral_residual(img);
  FusionParams p;
  p.alpha = 0.0;
  p.shape = VpShape::circle;
  EXPECT_EQ(predict(img, s, {30, 70}, p).grid, smoothed_vp_map({30, 70}, p, 120, 90));
}

TEST(Predict, PeaksInsideVpSquareWhenSaliencyIsFlat) {
  const Grid2D img(200, 150, 0.5);
  const SaliencyMap s(Grid2D(200, 150), ModelId::spectral_residual());
  FusionParams p;
  p.alpha = 0.642;
  const FusedMap f = predict(img, s, {140, 40}, p);
  const std::size_t i = argmax(f.grid);
  const double x = static_cast<double>(i % 200) + 0.5;
  const double y = static_cast<double>(i / 200) + 0.5;
  // 40 px in the 400 frame is 20 px here
  EXPECT_LT(std::abs(x - 140), 10.0);
  EXPECT_LT(std::abs(y - 40), 10.0);
  EXPECT_EQ(f.grid.min(), 0.0);
  EXPECT_EQ(f.grid.max(), 1.0);
}

TEST(Predict, RejectsMismatchedSaliency) {
  const SaliencyMap s(Grid2D(10, 10), ModelId::itti());
  EXPECT_THROW(predict(Grid2D(20, 10), s, {5, 5}, FusionParams{}), InvalidArgument);
}

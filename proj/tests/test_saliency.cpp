#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>

#include "synthetic.hpp"
#include "vpsal/errors.hpp"
#include "vpsal/saliency.hpp"

using namespace vpsal;

namespace {

// Naive separable DFT on interleaved data; sign -1 forward, +1 inverse
// (unnormalized).
void dense_dft2d(std::vector<double>& data, std::size_t w, std::size_t h, int sign) {
  using C = std::complex<double>;
  std::vector<C> a(w * h);
  for (std::size_t i = 0; i < w * h; ++i) a[i] = {data[2 * i], data[2 * i + 1]};
  auto pass = [&](std::size_t n, std::size_t lines, auto at) {
    std::vector<C> tmp(n);
    for (std::size_t l = 0; l < lines; ++l) {
      for (std::size_t k = 0; k < n; ++k) {
        C acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
          acc += at(l, j) * C(std::cos(ang), std::sin(ang));
        }
        tmp[k] = acc;
      }
      for (std::size_t k = 0; k < n; ++k) at(l, k) = tmp[k];
    }
  };
  pass(w, h, [&](std::size_t row, std::size_t x) -> C& { return a[row * w + x]; });
  pass(h, w, [&](std::size_t col, std::size_t y) -> C& { return a[y * w + col]; });
  for (std::size_t i = 0; i < w * h; ++i) {
    data[2 * i] = a[i].real();
    data[2 * i + 1] = a[i].imag();
  }
}

Grid2D sr_oracle(const Grid2D& image) {
  const SpectralResidualConfig cfg;
  const Grid2D small = detail::sr_downscale(image, cfg.working_side);
  const std::size_t w = small.width();
  const std::size_t h = small.height();
  std::vector<double> spec(2 * w * h, 0.0);
  for (std::size_t i = 0; i < w * h; ++i) spec[2 * i] = small.values()[i];
  dense_dft2d(spec, w, h, -1);
  detail::sr_residual(spec, w, h);
  dense_dft2d(spec, w, h, +1);
  Grid2D energy(w, h);
  const double n = static_cast<double>(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    energy.values()[i] = std::norm(std::complex<double>(spec[2 * i] / n, spec[2 * i + 1] / n));
  }
  return normalize_minmax(detail::sr_finish(energy, image.width(), image.height(), cfg.blur_sigma));
}

Grid2D bright_square(std::size_t side, std::size_t x0, std::size_t y0, std::size_t len) {
  Grid2D g(side, side, 0.0);
  for (std::size_t y = y0; y < y0 + len; ++y)
    for (std::size_t x = x0; x < x0 + len; ++x) g(x, y) = 1.0;
  return g;
}

Point argmax_point(const Grid2D& g) {
  const std::size_t i = argmax(g);
  return {static_cast<double>(i % g.width()), static_cast<double>(i / g.width())};
}

}  // namespace

TEST(ModelId, ParseAndPrint) {
  EXPECT_EQ(ModelId::parse("sr"), ModelId::spectral_residual());
  EXPECT_EQ(ModelId::parse("spectral_residual").str(), "spectral_residual");
  EXPECT_EQ(ModelId::parse("itti").str(), "itti");
  EXPECT_EQ(ModelId::parse("external:aim").str(), "external:aim");
  EXPECT_THROW(ModelId::parse("external:"), InvalidArgument);
  EXPECT_THROW(ModelId::parse("gbvs"), InvalidArgument);
}

TEST(SpectralResidual, ConstantImageGivesZeros) {
  const SaliencyMap s = spectral_residual(Grid2D(80, 60, 0.5));
  EXPECT_EQ(s.grid().width(), 80u);
  for (double v : s.grid().values()) EXPECT_EQ(v, 0.0);
}

TEST(SpectralResidual, RejectsTinyImages) { EXPECT_THROW(spectral_residual(Grid2D(7, 20, 0.0)), InvalidArgument); }

TEST(SpectralResidual, PeaksInsideIsolatedSquare) {
  const SaliencyMap s = spectral_residual(bright_square(64, 28, 28, 8));
  const Point p = argmax_point(s.grid());
  EXPECT_GE(p.x, 28.0);
  EXPECT_LT(p.x, 36.0);
  EXPECT_GE(p.y, 28.0);
  EXPECT_LT(p.y, 36.0);
}

TEST(SpectralResidual, PeaksInsideSquaresAwayFromBorder) {
  int inside = 0, total = 0;
  for (std::size_t y0 = 4; y0 <= 52; y0 += 8) {
    for (std::size_t x0 = 4; x0 <= 52; x0 += 8) {
      const Point p = argmax_point(spectral_residual(bright_square(64, x0, y0, 8)).grid());
      inside += p.x >= x0 && p.x < x0 + 8 && p.y >= y0 && p.y < y0 + 8;
      ++total;
    }
  }
  EXPECT_EQ(inside, total);
}

TEST(SpectralResidual, MatchesDenseTransformOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto [w, h] : {std::pair<std::size_t, std::size_t>{64, 64}, {120, 90}, {40, 100}}) {
    Grid2D img(w, h);
    for (double& v : img.values()) v = u(rng);
    const Grid2D fast = spectral_residual(img).grid();
    const Grid2D slow = sr_oracle(img);
    ASSERT_TRUE(fast.same_shape(slow));
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast.values()[i], slow.values()[i], 1e-9);
  }
}

TEST(SpectralResidual, ValuesInUnitRange) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid2D img(90, 50);
  for (double& v : img.values()) v = u(rng);
  const SaliencyMap s = spectral_residual(img);
  EXPECT_EQ(s.grid().min(), 0.0);
  EXPECT_EQ(s.grid().max(), 1.0);
  EXPECT_EQ(s.grid().width(), 90u);
  EXPECT_EQ(s.grid().height(), 50u);
}

TEST(Itti, FlatImageGivesZeros) {
  const Grid2D gray(96, 64, 0.4);
  const SaliencyMap s = itti_saliency(RgbImage{gray, gray, gray});
  for (double v : s.grid().values()) EXPECT_EQ(v, 0.0);
}

TEST(Itti, RedDiscOnGrayIsMostSalient) {
  const Grid2D gray(128, 96, 0.5);
  RgbImage img{gray, gray, gray};
  synth::draw_disc(img.r, {90, 30}, 8, 1.0);
  Grid2D hole(128, 96, 0.0);
  synth::draw_disc(hole, {90, 30}, 8, 1.0);
  for (std::size_t i = 0; i < hole.size(); ++i) {
    if (hole.values()[i] > 0) img.g.values()[i] = img.b.values()[i] = 0.0;
  }
  const Point p = argmax_point(itti_saliency(img).grid());
  EXPECT_LE(std::hypot(p.x + 0.5 - 90, p.y + 0.5 - 30), 8.0);
}

TEST(Itti, RejectsMismatchedChannels) {
  EXPECT_THROW(itti_saliency(RgbImage{Grid2D(40, 40), Grid2D(40, 40), Grid2D(40, 41)}), InvalidArgument);
}

TEST(Itti, EquivariantUnderHalfTurn) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid2D r(100, 70), g(100, 70), b(100, 70);
  for (auto* c : {&r, &g, &b})
    for (double& v : c->values()) v = u(rng);
  const Grid2D a = itti_saliency(RgbImage{r, g, b}).grid();
  const Grid2D rot = itti_saliency(RgbImage{rotate180(r), rotate180(g), rotate180(b)}).grid();
  const Grid2D back = rotate180(rot);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values()[i], back.values()[i], 1e-6);
}

TEST(Itti, PeakNormalizeRewardsSinglePeak) {
  Grid2D one(9, 9, 0.0);
  one(4, 4) = 2.0;
  const Grid2D n1 = itti_peak_normalize(one);
  EXPECT_DOUBLE_EQ(n1.max(), 1.0);

  Grid2D two(9, 9, 0.0);
  two(2, 2) = 2.0;
  two(6, 6) = 2.0;
  // the other maximum has mean 1 after scaling, so the map is suppressed
  EXPECT_EQ(itti_peak_normalize(two).max(), 0.0);
  EXPECT_EQ(itti_peak_normalize(Grid2D(5, 5, 0.0)).max(), 0.0);
}

TEST(ExternalMap, PngResizedAndNormalized) {
  const auto dir = synth::scratch_dir("sal_ext");
  Grid2D g(100, 100);
  for (std::size_t y = 0; y < 100; ++y)
    for (std::size_t x = 0; x < 100; ++x) g(x, y) = static_cast<double>((x + y) % 256) / 255.0;
  write_png_gray(dir / "aim_img.png", g);
  const SaliencyMap s = load_external_map(dir / "aim_img.png", 400, 300);
  EXPECT_EQ(s.grid().width(), 400u);
  EXPECT_EQ(s.grid().height(), 300u);
  EXPECT_EQ(s.grid().min(), 0.0);
  EXPECT_EQ(s.grid().max(), 1.0);
  EXPECT_EQ(s.model().kind(), ModelId::Kind::external);
}

TEST(ExternalMap, TextMatrix) {
  const auto dir = synth::scratch_dir("sal_txt");
  std::ofstream(dir / "bms.txt") << "0 1\n2 3\n";
  const SaliencyMap s = load_external_map(dir / "bms.txt", 2, 2);
  EXPECT_EQ(s.grid(), Grid2D(2, 2, {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
  EXPECT_THROW(load_external_map(dir / "missing.txt", 2, 2), IoError);
}

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "json.hpp"

namespace vpsal::synth {

void draw_segment(Grid2D& g, Point a, Point b, double value, double width) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  const double reach = width / 2.0 + 1.0;
  const auto x0 = static_cast<long long>(std::floor(std::min(a.x, b.x) - reach));
  const auto x1 = static_cast<long long>(std::ceil(std::max(a.x, b.x) + reach));
  const auto y0 = static_cast<long long>(std::floor(std::min(a.y, b.y) - reach));
  const auto y1 = static_cast<long long>(std::ceil(std::max(a.y, b.y) + reach));
  for (long long y = std::max(0LL, y0); y <= std::min<long long>(y1, static_cast<long long>(g.height()) - 1); ++y) {
    for (long long x = std::max(0LL, x0); x <= std::min<long long>(x1, static_cast<long long>(g.width()) - 1); ++x) {
      const double px = static_cast<double>(x) + 0.5;
      const double py = static_cast<double>(y) + 0.5;
      double t = len2 > 0.0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double d = std::hypot(px - (a.x + t * dx), py - (a.y + t * dy));
      const double cover = std::clamp(width / 2.0 + 0.5 - d, 0.0, 1.0);
      auto& v = g(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      v = std::max(v, cover * value);
    }
  }
}

void draw_disc(Grid2D& g, Point center, double radius, double value) {
  for (std::size_t y = 0; y < g.height(); ++y) {
    for (std::size_t x = 0; x < g.width(); ++x) {
      const double d = std::hypot(static_cast<double>(x) + 0.5 - center.x, static_cast<double>(y) + 0.5 - center.y);
      if (d <= radius) g(x, y) = std::max(g(x, y), value);
    }
  }
}

Grid2D converging_lines(std::size_t w, std::size_t h, Point vp, const std::vector<double>& angles_deg,
                        double value, double width) {
  Grid2D g(w, h);
  const double far = 2.0 * std::hypot(static_cast<double>(w), static_cast<double>(h));
  for (double deg : angles_deg) {
    const double rad = deg * std::numbers::pi / 180.0;
    draw_segment(g, vp, {vp.x + far * std::cos(rad), vp.y + far * std::sin(rad)}, value, width);
  }
  return g;
}

std::vector<double> ray_angles(std::size_t count, std::mt19937_64& rng, double axis_gap) {
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::vector<double> out;
  const double span = 360.0 / static_cast<double>(count);
  for (std::size_t i = 0; out.size() < count && i < 100 * count; ++i) {
    const double base = span * (static_cast<double>(out.size()) + 0.5 + jitter(rng));
    const double m = std::fmod(base, 90.0);
    if (std::min(m, 90.0 - m) < axis_gap) {
      // nudge off the axis instead of dropping the ray
      const double shifted = base + (m < 45.0 ? axis_gap - m : -(axis_gap - (90.0 - m)));
      out.push_back(shifted);
    } else {
      out.push_back(base);
    }
  }
  return out;
}

namespace {

Point sample_near(Point c, double sigma, std::size_t w, std::size_t h, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, sigma);
  for (;;) {
    const double x = c.x + n(rng);
    const double y = c.y + n(rng);
    if (x >= 0.0 && y >= 0.0 && x < static_cast<double>(w) && y < static_cast<double>(h)) {
      // fixation files hold pixel indices
      return {std::floor(x), std::floor(y)};
    }
  }
}

}  // namespace

SyntheticImage make_synthetic_image(const SyntheticOptions& opt, std::mt19937_64& rng) {
  const double w = static_cast<double>(opt.width);
  const double h = static_cast<double>(opt.height);
  std::uniform_real_distribution<double> ux(0.2 * w, 0.8 * w);
  std::uniform_real_distribution<double> uy(0.2 * h, 0.8 * h);
  std::uniform_real_distribution<double> bx(0.1 * w, 0.9 * w);
  std::uniform_real_distribution<double> by(0.1 * h, 0.9 * h);

  SyntheticImage out{RgbImage{Grid2D(opt.width, opt.height), Grid2D(opt.width, opt.height),
                              Grid2D(opt.width, opt.height)},
                     {}, {}, {}};
  out.vp = {ux(rng), uy(rng)};
  do {
    out.blob = {bx(rng), by(rng)};
  } while (std::hypot(out.blob.x - out.vp.x, out.blob.y - out.vp.y) < 0.3 * w);

  auto angles = ray_angles(8, rng);
  Grid2D gray = converging_lines(opt.width, opt.height, out.vp, angles, opt.line_contrast, 1.5);
  std::normal_distribution<double> noise(0.0, 0.02);
  for (double& v : gray.values()) v = std::clamp(0.25 + v + noise(rng), 0.0, 1.0);
  draw_disc(gray, out.blob, opt.blob_radius, 1.0);
  out.image = RgbImage{gray, gray, gray};

  const auto n_vp = static_cast<std::size_t>(std::lround(opt.vp_fraction * static_cast<double>(opt.fixations)));
  std::uniform_int_distribution<std::size_t> fx(0, opt.width - 1), fy(0, opt.height - 1);
  for (std::size_t i = 0; i < opt.fixations; ++i) {
    if (opt.uniform_fixations) {
      out.fixations.push_back({static_cast<double>(fx(rng)), static_cast<double>(fy(rng))});
      continue;
    }
    out.fixations.push_back(i < n_vp ? sample_near(out.vp, opt.vp_sigma, opt.width, opt.height, rng)
                                     : sample_near(out.blob, opt.blob_sigma, opt.width, opt.height, rng));
  }
  return out;
}

std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t count,
                                              std::uint64_t seed, const SyntheticOptions& opt) {
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < count; ++i) {
    const SyntheticImage img = make_synthetic_image(opt, rng);
    const std::string stem = "img" + std::to_string(1000 + i).substr(1);
    write_png_rgb(dir / (stem + ".png"), img.image);
    std::ofstream fix(dir / (stem + ".csv"));
    fix << "x,y\n";
    for (const Point& p : img.fixations) fix << p.x << "," << p.y << "\n";
    entries.push_back({{"image", stem + ".png"},
                       {"fixations", stem + ".csv"},
                       {"vp_rect", {img.vp.x - 5.0, img.vp.y - 5.0, 10.0, 10.0}}});
  }
  const auto manifest = dir / "manifest.json";
  std::ofstream(manifest) << nlohmann::json{{"name", "synthetic"}, {"entries", entries}}.dump(2);
  return manifest;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vpsal_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vpsal::synth

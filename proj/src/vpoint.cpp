#include "vpsal/vpoint.hpp"

#include <algorithm>
#include <cmath>

#include "vpsal/errors.hpp"

namespace vpsal {

VpAnnotation VpAnnotation::checked(const Rect& rect, std::size_t width, std::size_t height) {
  if (!(rect.w >= 1.0) || !(rect.h >= 1.0)) {
    throw InvalidArgument("VP rectangle must be at least 1x1 pixel");
  }
  if (!rect.clipped(width, height)) {
    throw InvalidArgument("VP rectangle does not overlap the image");
  }
  return VpAnnotation{rect};
}

Point vp_center(const VpAnnotation& a) { return a.rect.center(); }

double ratio_of(double length_px, double max_side_px) {
  if (!(length_px > 0.0) || !(max_side_px > 0.0)) {
    throw InvalidArgument("window length and max side must be positive");
  }
  return length_px / max_side_px;
}

VpWindow::VpWindow(double length_px, double max_side_px)
    : length_px_(length_px), max_side_px_(max_side_px) {
  if (!(length_px >= 1.0) || !std::isfinite(length_px)) {
    throw InvalidArgument("VP window length must be at least 1 px");
  }
  if (!(max_side_px >= length_px) || !std::isfinite(max_side_px)) {
    throw InvalidArgument("VP window length cannot exceed the max side");
  }
}

VpWindow VpWindow::scaled_to(double longest_side) const {
  const double factor = longest_side / max_side_px_;
  return VpWindow(std::max(1.0, length_px_ * factor), std::max(longest_side, 1.0));
}

std::string to_string(VpShape shape) {
  switch (shape) {
    case VpShape::square:
      return "square";
    case VpShape::circle:
      return "circle";
    case VpShape::gaussian:
      return "gaussian";
  }
  return "square";
}

VpShape parse_vp_shape(const std::string& text) {
  if (text == "square") return VpShape::square;
  if (text == "circle") return VpShape::circle;
  if (text == "gaussian") return VpShape::gaussian;
  throw InvalidArgument("unknown VP shape '" + text + "'");
}

void check_vp_center(Point center, std::size_t w, std::size_t h) {
  const double fw = static_cast<double>(w);
  const double fh = static_cast<double>(h);
  const double dx = std::max({0.0, -center.x, center.x - fw});
  const double dy = std::max({0.0, -center.y, center.y - fh});
  if (!std::isfinite(center.x) || !std::isfinite(center.y) ||
      std::hypot(dx, dy) > 0.25 * std::hypot(fw, fh)) {
    throw InvalidArgument("VP center lies too far outside the frame");
  }
}

namespace {

std::vector<double> square_factor(double c, double length, std::size_t n) {
  std::vector<double> f(n, 0.0);
  const double lo = c - length / 2.0;
  const double hi = c + length / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(i) + 0.5;
    if (p >= lo && p < hi) f[i] = 1.0;
  }
  return f;
}

std::vector<double> gaussian_factor(double c, double sigma, std::size_t n) {
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(i) + 0.5 - c;
    f[i] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return f;
}

}  // namespace

bool vp_map_factors(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h,
                    std::vector<double>& cols, std::vector<double>& rows) {
  const double length = window.length_px();
  switch (shape) {
    case VpShape::square:
      cols = square_factor(center.x, length, w);
      rows = square_factor(center.y, length, h);
      return true;
    case VpShape::gaussian:
      cols = gaussian_factor(center.x, length / 2.0, w);
      rows = gaussian_factor(center.y, length / 2.0, h);
      return true;
    case VpShape::circle:
      break;
  }
  return false;
}

Grid2D build_vp_map(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h) {
  if (w == 0 || h == 0) throw InvalidArgument("VP map dimensions must be at least 1x1");
  check_vp_center(center, w, h);

  Grid2D map(w, h);
  if (shape == VpShape::circle) {
    const double r = window.length_px() / 2.0;
    for (std::size_t y = 0; y < h; ++y) {
      const double dy = static_cast<double>(y) + 0.5 - center.y;
      for (std::size_t x = 0; x < w; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - center.x;
        if (dx * dx + dy * dy < r * r) map(x, y) = 1.0;
      }
    }
    return map;
  }

  std::vector<double> cols, rows;
  vp_map_factors(center, window, shape, w, h, cols, rows);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) map(x, y) = cols[x] * rows[y];
  }
  return shape == VpShape::gaussian ? normalize_minmax(map) : map;
}

}  // namespace vpsal

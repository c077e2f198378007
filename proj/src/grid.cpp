#include "vpsal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vpsal/errors.hpp"

namespace vpsal {

Grid2D::Grid2D(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  if (width == 0 || height == 0) throw InvalidArgument("grid dimensions must be at least 1x1");
  if (!std::isfinite(fill)) throw InvalidArgument("grid fill value must be finite");
  values_.assign(width * height, fill);
}

Grid2D::Grid2D(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width == 0 || height == 0) throw InvalidArgument("grid dimensions must be at least 1x1");
  if (values_.size() != width * height) {
    throw InvalidArgument("grid has " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(width * height));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("grid values must be finite");
  }
}

double Grid2D::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Grid2D::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Grid2D::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

std::optional<Rect> Rect::clipped(std::size_t width, std::size_t height) const {
  const double x0 = std::max(x, 0.0);
  const double y0 = std::max(y, 0.0);
  const double x1 = std::min(x + w, static_cast<double>(width));
  const double y1 = std::min(y + h, static_cast<double>(height));
  if (x1 - x0 < 1.0 || y1 - y0 < 1.0) return std::nullopt;
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

Grid2D normalize_minmax(const Grid2D& g) {
  const double lo = g.min();
  const double hi = g.max();
  Grid2D out(g.width(), g.height(), 0.0);
  if (hi == lo) return out;
  const double range = hi - lo;
  auto src = g.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    // clamp guards the last ulp; (hi - lo) / range is exactly 1 anyway
    dst[i] = std::clamp((src[i] - lo) / range, 0.0, 1.0);
  }
  return out;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("gaussian sigma must be positive, got " + std::to_string(sigma));
  }
  const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  const double denom = 2.0 * sigma * sigma;
  double total = 0.0;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(radius);
    kernel[i] = std::exp(-d * d / denom);
    total += kernel[i];
  }
  for (double& k : kernel) k /= total;
  return kernel;
}

std::size_t reflect_index(long long i, std::size_t n) {
  const auto period = static_cast<long long>(2 * n);
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<long long>(n)) m = period - 1 - m;
  return static_cast<std::size_t>(m);
}

std::vector<double> blur_1d(std::span<const double> line, std::span<const double> kernel) {
  const std::size_t n = line.size();
  const auto radius = static_cast<long long>(kernel.size() / 2);
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    double acc = 0.0;
    const auto base = static_cast<long long>(x) - radius;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      acc += kernel[k] * line[reflect_index(base + static_cast<long long>(k), n)];
    }
    out[x] = acc;
  }
  return out;
}

Grid2D gaussian_blur(const Grid2D& g, double sigma) {
  const auto kernel = gaussian_kernel(sigma);
  const std::size_t w = g.width();
  const std::size_t h = g.height();
  const auto radius = static_cast<long long>(kernel.size() / 2);

  Grid2D tmp(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto row = blur_1d(g.values().subspan(y * w, w), kernel);
    std::copy(row.begin(), row.end(), tmp.values().begin() + static_cast<std::ptrdiff_t>(y * w));
  }

  // Vertical pass row by row; per-pixel accumulation order matches blur_1d.
  Grid2D out(w, h);
  auto src = tmp.values();
  auto dst = out.values();
  for (std::size_t y = 0; y < h; ++y) {
    double* orow = dst.data() + y * w;
    const auto base = static_cast<long long>(y) - radius;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      const double* irow = src.data() + reflect_index(base + static_cast<long long>(k), h) * w;
      const double wk = kernel[k];
      for (std::size_t x = 0; x < w; ++x) orow[x] += wk * irow[x];
    }
  }
  return out;
}

Grid2D resize_bilinear(const Grid2D& g, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw InvalidArgument("resize target must be at least 1x1");
  const std::size_t sw = g.width();
  const std::size_t sh = g.height();
  if (sw == width && sh == height) return g;

  struct Tap {
    std::size_t i0, i1;
    double f;
  };
  auto taps = [](std::size_t src, std::size_t dst) {
    std::vector<Tap> t(dst);
    const double scale = static_cast<double>(src) / static_cast<double>(dst);
    const double hi = static_cast<double>(src - 1);
    for (std::size_t i = 0; i < dst; ++i) {
      const double s = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, hi);
      const auto i0 = static_cast<std::size_t>(std::floor(s));
      t[i] = {i0, std::min(i0 + 1, src - 1), s - static_cast<double>(i0)};
    }
    return t;
  };
  const auto tx = taps(sw, width);
  const auto ty = taps(sh, height);

  Grid2D out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const auto& [y0, y1, fy] = ty[y];
    for (std::size_t x = 0; x < width; ++x) {
      const auto& [x0, x1, fx] = tx[x];
      const double top = (1.0 - fx) * g(x0, y0) + fx * g(x1, y0);
      const double bottom = (1.0 - fx) * g(x0, y1) + fx * g(x1, y1);
      out(x, y) = (1.0 - fy) * top + fy * bottom;
    }
  }
  return out;
}

Grid2D standardize(const Grid2D& g) {
  if (g.min() == g.max()) throw ZeroVarianceError();
  const auto n = static_cast<double>(g.size());
  const double mean = g.sum() / n;
  double ss = 0.0;
  for (double v : g.values()) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) throw ZeroVarianceError();
  Grid2D out(g.width(), g.height());
  auto dst = out.values();
  auto src = g.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] - mean) / sd;
  return out;
}

std::size_t argmax(const Grid2D& g) {
  auto v = g.values();
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

Grid2D rotate180(const Grid2D& g) {
  std::vector<double> v(g.values().begin(), g.values().end());
  std::reverse(v.begin(), v.end());
  return Grid2D(g.width(), g.height(), std::move(v));
}

}  // namespace vpsal

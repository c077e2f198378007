#include "vpsal/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vpsal/errors.hpp"

namespace vpsal {

void FusionParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (!(smooth_sigma > 0.0) || !std::isfinite(smooth_sigma)) {
    throw InvalidArgument("smoothing sigma must be positive");
  }
}

VpWindow FusionParams::native_window(std::size_t w, std::size_t h) const {
  return window.scaled_to(static_cast<double>(std::max(w, h)));
}

double FusionParams::native_sigma(std::size_t w, std::size_t h) const {
  return smooth_sigma * static_cast<double>(std::max(w, h)) / window.max_side_px();
}

Grid2D combine(const Grid2D& s, const Grid2D& vp, double alpha) {
  if (!s.same_shape(vp)) throw InvalidArgument("saliency and VP maps differ in size");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  const double beta = 1.0 - alpha;
  Grid2D out(s.width(), s.height());
  auto a = s.values();
  auto b = vp.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = alpha * a[i] + beta * b[i];
  return out;
}

Grid2D combine(const SaliencyMap& s, const Grid2D& vp, double alpha) {
  return combine(s.grid(), vp, alpha);
}

FusedMap predict(const Grid2D& image, const SaliencyMap& s, Point vp_center, const FusionParams& params) {
  params.validate();
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (!s.grid().same_shape(image)) throw InvalidArgument("saliency map does not match the image size");
  const Grid2D vp = build_vp_map(vp_center, params.native_window(w, h), params.shape, w, h);
  const Grid2D fused = combine(s, vp, params.alpha);
  return FusedMap{normalize_minmax(gaussian_blur(fused, params.native_sigma(w, h))), params, s.model()};
}

Grid2D smoothed_saliency(const SaliencyMap& s, const FusionParams& params) {
  params.validate();
  const Grid2D& g = s.grid();
  return normalize_minmax(gaussian_blur(g, params.native_sigma(g.width(), g.height())));
}

Grid2D smoothed_vp_map(Point vp_center, const FusionParams& params, std::size_t w, std::size_t h) {
  params.validate();
  const Grid2D vp = build_vp_map(vp_center, params.native_window(w, h), params.shape, w, h);
  return normalize_minmax(gaussian_blur(vp, params.native_sigma(w, h)));
}

Grid2D blurred_vp_map(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h,
                      double sigma) {
  check_vp_center(center, w, h);
  std::vector<double> cols, rows;
  if (!vp_map_factors(center, window, shape, w, h, cols, rows)) {
    return gaussian_blur(build_vp_map(center, window, shape, w, h), sigma);
  }
  const auto kernel = gaussian_kernel(sigma);
  const auto bc = blur_1d(cols, kernel);
  const auto br = blur_1d(rows, kernel);
  Grid2D out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) out(x, y) = bc[x] * br[y];
  }
  if (shape == VpShape::gaussian) {
    // build_vp_map min-max normalizes the product; blur commutes with that
    // affine map because the kernel preserves constants.
    double lo_c = *std::min_element(cols.begin(), cols.end());
    double lo_r = *std::min_element(rows.begin(), rows.end());
    double hi_c = *std::max_element(cols.begin(), cols.end());
    double hi_r = *std::max_element(rows.begin(), rows.end());
    const double lo = lo_c * lo_r;
    const double hi = hi_c * hi_r;
    if (hi == lo) return Grid2D(w, h);
    for (double& v : out.values()) v = (v - lo) / (hi - lo);
  }
  return out;
}

}  // namespace vpsal

#pragma once

#include "vpsal/grid.hpp"
#include "vpsal/saliency.hpp"
#include "vpsal/vpoint.hpp"

namespace vpsal {

inline constexpr double kDefaultAlpha = 0.642;
inline constexpr double kDefaultWindow = 40.0;
inline constexpr double kDefaultSigmaRatio = 0.04;

// Parameters of the combined model. Window length and smoothing sigma are
// quoted in the normalized frame (longest side = window.max_side_px()) and
// rescaled to each image's native resolution.
struct FusionParams {
  double alpha = kDefaultAlpha;
  VpWindow window{kDefaultWindow};
  VpShape shape = VpShape::square;
  double smooth_sigma = kDefaultSigmaRatio * kDefaultMaxSide;

  // Throws InvalidArgument unless alpha is in [0, 1] and smooth_sigma > 0.
  void validate() const;

  VpWindow native_window(std::size_t w, std::size_t h) const;
  double native_sigma(std::size_t w, std::size_t h) const;
};

struct FusedMap {
  Grid2D grid;
  FusionParams params;
  ModelId model;
};

// alpha * S + (1 - alpha) * VP, pointwise.
Grid2D combine(const SaliencyMap& s, const Grid2D& vp, double alpha);
Grid2D combine(const Grid2D& s, const Grid2D& vp, double alpha);

// VP map -> combine -> gaussian blur -> min-max normalize.
FusedMap predict(const Grid2D& image, const SaliencyMap& s, Point vp_center, const FusionParams& params);

// Blur + normalize of the saliency map alone; what predict yields at alpha = 1.
Grid2D smoothed_saliency(const SaliencyMap& s, const FusionParams& params);

// Blur + normalize of the VP map alone; what predict yields at alpha = 0.
Grid2D smoothed_vp_map(Point vp_center, const FusionParams& params, std::size_t w, std::size_t h);

// gaussian_blur(build_vp_map(...)) computed from the map's separable factors
// when the shape allows it (square, gaussian); equal to the dense route up to
// rounding.
Grid2D blurred_vp_map(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h,
                      double sigma);

}  // namespace vpsal

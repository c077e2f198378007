#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vpsal/grid.hpp"

namespace vpsal {

// Longest image side of the normalized frame in which window lengths are
// quoted.
inline constexpr double kDefaultMaxSide = 400.0;

// Annotated vanishing-point rectangle in source-image pixels.
struct VpAnnotation {
  Rect rect;

  // Validates that the rectangle overlaps a width x height image by at least
  // one pixel.
  static VpAnnotation checked(const Rect& rect, std::size_t width, std::size_t height);
};

Point vp_center(const VpAnnotation& a);

// Side length of the VP square relative to the longest side of the
// normalized frame.
double ratio_of(double length_px, double max_side_px);

class VpWindow {
 public:
  explicit VpWindow(double length_px, double max_side_px = kDefaultMaxSide);

  double length_px() const { return length_px_; }
  double max_side_px() const { return max_side_px_; }
  double ratio() const { return ratio_of(length_px_, max_side_px_); }

  // The same ratio expressed in a frame whose longest side is `longest_side`.
  VpWindow scaled_to(double longest_side) const;

  friend bool operator==(const VpWindow&, const VpWindow&) = default;

 private:
  double length_px_;
  double max_side_px_;
};

enum class VpShape { square, circle, gaussian };

std::string to_string(VpShape shape);
VpShape parse_vp_shape(const std::string& text);

// VP prior map of size w x h around `center`, window length in native pixels.
//   square:   1 where the pixel center lies in [c - L/2, c + L/2) on both axes
//   circle:   1 where the pixel center is closer than L/2 to c
//   gaussian: exp(-d^2 / (2 sigma^2)), sigma = L/2, min-max normalized
// Throws InvalidArgument when the center lies more than a quarter of the
// image diagonal outside the frame.
Grid2D build_vp_map(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h);

// Separable factors of the square and gaussian maps: value(x, y) =
// cols[x] * rows[y]. Returns false for the circle shape.
bool vp_map_factors(Point center, const VpWindow& window, VpShape shape, std::size_t w, std::size_t h,
                    std::vector<double>& cols, std::vector<double>& rows);

// Throws unless `center` is within a quarter of the diagonal of the frame.
void check_vp_center(Point center, std::size_t w, std::size_t h);

// ---------------------------------------------------------------------------
// Automatic detection

struct VpDetection {
  Point point;
  double confidence = 0.0;  // share of intersection votes in the peak cell
};

struct VpDetectorConfig {
  double theta_step_deg = 1.0;
  double rho_step_px = 1.0;
  std::size_t max_lines = 20;
  double axis_exclusion_deg = 5.0;
  double vote_cell_px = 4.0;
  // Non-maximum suppression half-window in the Hough accumulator.
  int nms_theta_bins = 6;
  int nms_rho_bins = 8;
  // Peaks weaker than this share of the strongest peak are not lines.
  double min_peak_fraction = 0.4;
  std::size_t min_line_votes = 20;
};

// Sobel + Otsu edges, Hough lines, weighted intersection voting. Throws
// NoDetectionError when fewer than two usable lines are found, and
// InvalidArgument for images smaller than 64x64.
VpDetection detect_vp(const Grid2D& image, const VpDetectorConfig& cfg = {});

namespace detail {
// Otsu threshold over a 256-bin histogram of values in [0, 1].
double otsu_threshold(const Grid2D& normalized);

struct HoughLine {
  double theta;  // radians, normal direction in [0, pi)
  double rho;    // signed distance from the origin along the normal
  double strength;
};

// Edge detection and line extraction stages of detect_vp. Throws
// NoDetectionError when the image has no edges.
std::vector<HoughLine> hough_lines(const Grid2D& image, const VpDetectorConfig& cfg = {});
}  // namespace detail

}  // namespace vpsal

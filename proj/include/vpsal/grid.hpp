#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vpsal {

// Continuous image coordinates. Pixel (i, j) covers [i, i+1) x [j, j+1),
// so its center sits at (i + 0.5, j + 0.5).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Dense row-major raster of finite doubles.
//
// Constructors reject empty extents, mismatched value counts and non-finite
// values. Mutable element access is provided for producers; callers writing
// through it are responsible for keeping values finite.
class Grid2D {
 public:
  Grid2D(std::size_t width, std::size_t height, double fill = 0.0);
  Grid2D(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double operator()(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }
  double& operator()(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_shape(const Grid2D& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  double min() const;
  double max() const;
  double sum() const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

// Axis-aligned pixel rectangle with top-left corner (x, y).
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
  double h = 1.0;

  Point center() const { return {x + w / 2.0, y + h / 2.0}; }

  // Intersection with a width x height frame, or nullopt when the overlap is
  // smaller than one pixel in either direction.
  std::optional<Rect> clipped(std::size_t width, std::size_t height) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Affine rescale to [0, 1]. A constant map becomes all zeros.
Grid2D normalize_minmax(const Grid2D& g);

// Separable Gaussian blur, kernel truncated at ceil(3 sigma) taps per side,
// half-sample symmetric borders (a b c | c b a). Throws InvalidArgument for
// sigma <= 0.
Grid2D gaussian_blur(const Grid2D& g, double sigma);

// Normalized 1D kernel used by gaussian_blur; size 2 * ceil(3 sigma) + 1.
std::vector<double> gaussian_kernel(double sigma);

// 1D convolution with the same kernel and border rule as gaussian_blur.
std::vector<double> blur_1d(std::span<const double> line, std::span<const double> kernel);

// Index into [0, n) for an arbitrary integer under half-sample symmetric
// reflection with period 2n.
std::size_t reflect_index(long long i, std::size_t n);

// Bilinear resize with pixel-center alignment and edge clamping.
Grid2D resize_bilinear(const Grid2D& g, std::size_t width, std::size_t height);

// Zero mean, unit population standard deviation. Throws ZeroVarianceError on a
// constant map.
Grid2D standardize(const Grid2D& g);

// Row-major index of the first maximum.
std::size_t argmax(const Grid2D& g);

// 180 degree rotation.
Grid2D rotate180(const Grid2D& g);

}  // namespace vpsal

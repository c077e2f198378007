#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "vpsal/grid.hpp"

namespace vpsal {

// Fixation points of one image in pixel coordinates. Points are rounded to
// the nearest pixel when scored.
class FixationSet {
 public:
  FixationSet() = default;
  explicit FixationSet(std::vector<Point> points) : points_(std::move(points)) {}

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // Row-major pixel indices, one per fixation (duplicates kept). Throws
  // InvalidArgument when the set is empty or a point rounds outside the frame.
  std::vector<std::size_t> pixel_indices(std::size_t width, std::size_t height) const;

  // Points that round to a pixel inside the frame.
  FixationSet clipped_to(std::size_t width, std::size_t height) const;

 private:
  std::vector<Point> points_;
};

// CSV with header "x,y", or a PNG/JPEG fixation map (nonzero = fixated).
FixationSet load_fixations(const std::filesystem::path& path);

struct ScorePair {
  double auc = 0.5;
  double nss = 0.0;
};

// AUC-Judd: fixated pixels (deduplicated) are positives, every other pixel a
// negative; thresholds at each distinct positive value, ">= threshold" counts
// as predicted positive, trapezoidal area. Constant maps score 0.5.
double auc_judd(const Grid2D& map, const FixationSet& fix);

double auc_judd(std::span<const double> map, std::span<const std::size_t> fixated);

// Mean of the standardized map at fixations, duplicates with multiplicity.
// Throws ZeroVarianceError for constant maps.
double nss(const Grid2D& map, const FixationSet& fix);
double nss(std::span<const double> map, std::span<const std::size_t> fixated);

// Scores many maps of one frame against the same fixations; the positive
// mask and deduplication are computed once.
class FixationScorer {
 public:
  FixationScorer(std::size_t pixel_count, std::vector<std::size_t> fixated);

  double auc(std::span<const double> map) const;
  double nss(std::span<const double> map) const;
  double score(std::span<const double> map, bool use_nss) const { return use_nss ? nss(map) : auc(map); }

 private:
  std::size_t pixel_count_;
  std::vector<std::size_t> fixated_;  // with multiplicity
  std::vector<std::size_t> unique_;
  std::vector<char> is_pos_;
};

// ---------------------------------------------------------------------------
// Statistics

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation, 0 for n == 1
};

MeanStd mean_std(std::span<const double> xs);

struct TTestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  double df = 0.0;
  double mean_a = 0.0, mean_b = 0.0;
  double std_a = 0.0, std_b = 0.0;
  std::size_t n_a = 0, n_b = 0;
};

// Welch's unequal-variance two-sample t-test, two-tailed.
TTestResult t_test_two_sample(std::span<const double> a, std::span<const double> b);

// Regularized incomplete beta I_x(a, b), continued fraction (Lentz).
double regularized_incomplete_beta(double x, double a, double b);

// Two-tailed P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

}  // namespace vpsal

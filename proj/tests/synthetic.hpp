#pragma once

// Synthetic stimuli and datasets with known ground truth, shared by the unit
// and acceptance suites.

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "vpsal/grid.hpp"
#include "vpsal/image_io.hpp"

namespace vpsal::synth {

// Max-composites an anti-aliased segment of the given width.
void draw_segment(Grid2D& g, Point a, Point b, double value, double width = 1.5);

// Max-composites a disc; pixels whose centers are within `radius` are set.
void draw_disc(Grid2D& g, Point center, double radius, double value);

// Segments from `vp` to the frame border at the given angles (degrees).
Grid2D converging_lines(std::size_t w, std::size_t h, Point vp, const std::vector<double>& angles_deg,
                        double value = 1.0, double width = 1.5);

// `count` ray angles spread around the circle, each kept at least `axis_gap`
// degrees away from horizontal and vertical.
std::vector<double> ray_angles(std::size_t count, std::mt19937_64& rng, double axis_gap = 10.0);

struct SyntheticOptions {
  std::size_t width = 400;
  std::size_t height = 300;
  std::size_t fixations = 20;
  double vp_fraction = 0.5;    // share of fixations drawn around the VP
  double vp_sigma = 20.0;      // spread of VP fixations
  double blob_radius = 14.0;
  double blob_sigma = 8.0;     // spread of blob fixations
  double line_contrast = 0.12; // faint perspective lines toward the VP
  bool uniform_fixations = false;  // ignore VP and blob, spread over the frame
};

struct SyntheticImage {
  RgbImage image;
  Point vp;
  Point blob;
  std::vector<Point> fixations;  // pixel-index coordinates
};

SyntheticImage make_synthetic_image(const SyntheticOptions& opt, std::mt19937_64& rng);

// Writes images, fixation CSVs and manifest.json into `dir`; returns the
// manifest path. VP rectangles are 10x10 boxes centered on the VP.
std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t count,
                                              std::uint64_t seed, const SyntheticOptions& opt = {});

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace vpsal::synth

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vpsal/dataset.hpp"
#include "vpsal/fusion.hpp"
#include "vpsal/metrics.hpp"
#include "vpsal/saliency.hpp"

namespace vpsal {

enum class Metric { auc, nss };

std::string to_string(Metric m);
Metric parse_metric(const std::string& text);

// Inclusive arithmetic grid start, start + step, ..., stop.
std::vector<double> make_grid(double start, double stop, double step);

struct SweepConfig {
  std::vector<double> alphas = make_grid(0.0, 1.0, 0.002);
  // Window lengths in the normalized frame (longest side = max_side).
  std::vector<double> window_lengths = make_grid(8.0, 120.0, 2.0);
  VpShape shape = VpShape::square;
  ModelId model = ModelId::spectral_residual();
  Metric metric = Metric::auc;
  double max_side = kDefaultMaxSide;
  double smooth_sigma = kDefaultSigmaRatio * kDefaultMaxSide;

  // Throws InvalidArgument for empty grids or alphas outside [0, 1].
  void validate() const;

  FusionParams params(double alpha, double window) const;
};

struct SkippedImage {
  std::string id;
  std::string reason;
};

// ---------------------------------------------------------------------------
// Per-image preparation shared by every harness operation.

struct PreparedImage {
  std::string id;
  std::size_t width = 0;
  std::size_t height = 0;
  SaliencyMap saliency;
  Point vp_center;
  FixationSet fixations;              // clipped to the frame
  std::vector<std::size_t> fixated;   // row-major pixel indices
};

struct PreparedDataset {
  std::string name;
  std::vector<PreparedImage> images;
  std::vector<SkippedImage> skipped;
};

// Loads every entry and computes its saliency map. Failing entries are
// skipped and reported, never fatal.
PreparedDataset prepare_dataset(const DatasetManifest& m, const ModelId& model);

// Saliency map for one manifest entry.
SaliencyMap compute_saliency(const DatasetEntry& entry, const ModelId& model, const RgbImage& image);

// ---------------------------------------------------------------------------
// Evaluation at one operating point.

struct EvalRecord {
  std::string image_id;
  ScorePair original;
  ScorePair vp_only;
  ScorePair combined;
};

struct EvalResult {
  std::string dataset;
  ModelId model = ModelId::spectral_residual();
  FusionParams params;
  std::vector<EvalRecord> records;
  std::vector<SkippedImage> skipped;
};

EvalResult evaluate_dataset(const DatasetManifest& m, const ModelId& model, const FusionParams& params);
EvalResult evaluate_prepared(const PreparedDataset& data, const ModelId& model, const FusionParams& params);

// ---------------------------------------------------------------------------
// Window x alpha sweep.

// Per-image scores over the full grid for one metric. Scores are computed on
// alpha * blur(S) + (1 - alpha) * blur(VP), which equals the blurred combined
// map by linearity of the blur; both metrics are invariant to the final
// min-max rescale.
struct ScoreTable {
  std::vector<double> alphas;
  std::vector<double> windows;
  std::vector<std::string> image_ids;
  std::vector<double> original;                    // [image]
  std::vector<std::vector<double>> vp_only;        // [window][image]
  std::vector<std::vector<std::vector<double>>> combined;  // [window][alpha][image]
  std::vector<SkippedImage> skipped;

  std::size_t image_count() const { return image_ids.size(); }
};

ScoreTable compute_score_table(const PreparedDataset& data, const SweepConfig& cfg);

struct SweepResult {
  std::string dataset;
  SweepConfig config;
  std::vector<double> alphas;
  std::vector<double> windows;
  std::vector<std::vector<double>> mean_scores;  // [window][alpha]
  double original_mean = 0.0;
  std::vector<double> vp_only_mean;  // [window]
  // Best score over alpha at each window.
  std::vector<double> curve;
  std::vector<double> curve_alpha;
  std::size_t best_window_index = 0;
  std::size_t best_alpha_index = 0;
  double best_alpha = 0.0;
  double best_window = 0.0;
  double best_ratio = 0.0;
  double best_score = 0.0;
  std::size_t image_count = 0;
  std::vector<SkippedImage> skipped;
};

SweepResult sweep(const DatasetManifest& m, const SweepConfig& cfg);
SweepResult summarize_sweep(const ScoreTable& table, const SweepConfig& cfg, const std::string& dataset);

// ---------------------------------------------------------------------------
// Half-split cross-validation of alpha at the sweep's best window.

inline constexpr const char* kSplitAlgorithm =
    "mt19937_64; Fisher-Yates from the last index down, j uniform on [0, i] by rejection; "
    "train = first floor(n/2) of the permutation, test = the rest";

// Exact half partition of [0, n): first floor(n/2) indices of the shuffled
// order are the training half.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

Split half_split(std::size_t n, std::mt19937_64& rng);

struct CrossValRepeat {
  std::vector<std::string> train;
  std::vector<std::string> test;
  double best_alpha = 0.0;
  double original = 0.0;  // test-half means
  double vp_only = 0.0;
  double combined = 0.0;
};

struct CrossValResult {
  std::string dataset;
  SweepConfig config;
  std::uint64_t seed = 0;
  std::size_t repeats = 0;
  double window = 0.0;
  double window_ratio = 0.0;
  std::vector<CrossValRepeat> runs;
  MeanStd original;
  MeanStd vp_only;
  MeanStd combined;
  MeanStd best_alpha;
  TTestResult combined_vs_original;
  TTestResult combined_vs_vp;
  std::vector<SkippedImage> skipped;
};

CrossValResult cross_validate(const DatasetManifest& m, const SweepConfig& cfg, std::size_t repeats,
                              std::uint64_t seed);
CrossValResult cross_validate_table(const ScoreTable& table, const SweepConfig& cfg, std::size_t repeats,
                                    std::uint64_t seed, const std::string& dataset);

}  // namespace vpsal

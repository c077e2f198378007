#pragma once

#include <filesystem>
#include <string>

#include "vpsal/grid.hpp"
#include "vpsal/image_io.hpp"

namespace vpsal {

// Identifies the model that produced a saliency map. External models are maps
// computed elsewhere (e.g. AIM or BMS) and ingested from disk.
class ModelId {
 public:
  enum class Kind { spectral_residual, itti, external };

  static ModelId spectral_residual() { return ModelId(Kind::spectral_residual, {}); }
  static ModelId itti() { return ModelId(Kind::itti, {}); }
  static ModelId external(std::string name);

  // Accepts "sr", "spectral_residual", "itti", "external:<name>".
  static ModelId parse(const std::string& text);

  Kind kind() const { return kind_; }
  const std::string& external_name() const { return name_; }

  // "spectral_residual", "itti" or "external:<name>".
  std::string str() const;

  friend bool operator==(const ModelId&, const ModelId&) = default;

 private:
  ModelId(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
  Kind kind_;
  std::string name_;
};

// Saliency map min-max normalized to [0, 1] at construction.
class SaliencyMap {
 public:
  SaliencyMap(const Grid2D& raw, ModelId model) : grid_(normalize_minmax(raw)), model_(std::move(model)) {}

  const Grid2D& grid() const { return grid_; }
  const ModelId& model() const { return model_; }

 private:
  Grid2D grid_;
  ModelId model_;
};

struct SpectralResidualConfig {
  std::size_t working_side = 64;  // longer side at which the spectrum is analysed
  double blur_sigma = 2.5;        // at working scale
};

// Spectral-residual saliency of a grayscale image in [0, 1]. Throws
// InvalidArgument for images smaller than 8x8.
SaliencyMap spectral_residual(const Grid2D& image, const SpectralResidualConfig& cfg = {});

// Simplified Itti-Koch model: intensity and two color-opponency channels,
// six-level Gaussian pyramid, center-surround pairs (1,3) (1,4) (2,4) (2,5),
// peak-based map normalization, equal channel weights. No orientation channel.
SaliencyMap itti_saliency(const RgbImage& image);

// Grayscale PNG/JPEG or plain-text matrix, resized to target dimensions.
SaliencyMap load_external_map(const std::filesystem::path& path, std::size_t target_w,
                              std::size_t target_h);

// Peak-based normalization operator of the Itti model, exposed for testing:
// scales to [0, 1] then multiplies by (1 - mean of the other local maxima)^2.
Grid2D itti_peak_normalize(const Grid2D& g);

namespace detail {
// Spectral-residual stages around the Fourier transform, exposed so tests can
// drive the same pipeline with an independent transform.
Grid2D sr_downscale(const Grid2D& image, std::size_t working_side);
Grid2D sr_finish(const Grid2D& energy, std::size_t w, std::size_t h, double blur_sigma);
// Log-amplitude residual with unit phasors; inputs and outputs are interleaved
// re/im spectra of size 2*w*h.
void sr_residual(std::vector<double>& spectrum, std::size_t w, std::size_t h);
}  // namespace detail

}  // namespace vpsal

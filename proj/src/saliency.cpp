#include "vpsal/saliency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <utility>

#include "vpsal/errors.hpp"

namespace vpsal {

ModelId ModelId::external(std::string name) {
  if (name.empty()) throw InvalidArgument("external model name must be nonempty");
  return ModelId(Kind::external, std::move(name));
}

ModelId ModelId::parse(const std::string& text) {
  if (text == "sr" || text == "spectral_residual") return spectral_residual();
  if (text == "itti") return itti();
  constexpr std::string_view prefix = "external:";
  if (text.starts_with(prefix)) return external(text.substr(prefix.size()));
  throw InvalidArgument("unknown model '" + text + "'");
}

std::string ModelId::str() const {
  switch (kind_) {
    case Kind::spectral_residual:
      return "spectral_residual";
    case Kind::itti:
      return "itti";
    case Kind::external:
      break;
  }
  return "external:" + name_;
}

// ---------------------------------------------------------------------------
// Spectral residual

namespace detail {

Grid2D sr_downscale(const Grid2D& image, std::size_t working_side) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const std::size_t longer = std::max(w, h);
  auto scaled = [&](std::size_t side) {
    const double v = std::round(static_cast<double>(working_side) * static_cast<double>(side) /
                                static_cast<double>(longer));
    return std::max<std::size_t>(1, static_cast<std::size_t>(v));
  };
  return resize_bilinear(image, scaled(w), scaled(h));
}

void sr_residual(std::vector<double>& spectrum, std::size_t w, std::size_t h) {
  // Unit offset keeps exact spectral zeros (e.g. from box-shaped inputs) from
  // dominating the residual of their neighbours.
  constexpr double kFloor = 1.0;
  const std::size_t n = w * h;
  std::vector<double> log_amp(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_amp[i] = std::log(std::hypot(spectrum[2 * i], spectrum[2 * i + 1]) + kFloor);
  }
  // 3x3 box average; the spectrum is periodic so neighbours wrap.
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::size_t dy = 0; dy < 3; ++dy) {
        const std::size_t yy = (y + h + dy - 1) % h;
        for (std::size_t dx = 0; dx < 3; ++dx) {
          const std::size_t xx = (x + w + dx - 1) % w;
          acc += log_amp[yy * w + xx];
        }
      }
      const std::size_t i = y * w + x;
      const double re = spectrum[2 * i];
      const double im = spectrum[2 * i + 1];
      const double amp = std::hypot(re, im);
      if (amp > 0.0) {
        const double gain = std::exp(log_amp[i] - acc / 9.0) / amp;
        spectrum[2 * i] = re * gain;
        spectrum[2 * i + 1] = im * gain;
      } else {
        // undefined phase carries no energy
        spectrum[2 * i] = 0.0;
        spectrum[2 * i + 1] = 0.0;
      }
    }
  }
}

Grid2D sr_finish(const Grid2D& energy, std::size_t w, std::size_t h, double blur_sigma) {
  return resize_bilinear(gaussian_blur(energy, blur_sigma), w, h);
}

}  // namespace detail

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place 2D complex DFT on interleaved re/im data, unnormalized.
void fft2d(std::vector<double>& data, std::size_t w, std::size_t h, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * w * h));
  if (buf == nullptr) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(h), static_cast<int>(w), buf, buf, sign, FFTW_ESTIMATE);
  }
  std::copy(data.begin(), data.end(), &buf[0][0]);
  fftw_execute(plan);
  std::copy(&buf[0][0], &buf[0][0] + 2 * w * h, data.begin());
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

}  // namespace

SaliencyMap spectral_residual(const Grid2D& image, const SpectralResidualConfig& cfg) {
  if (image.width() < 8 || image.height() < 8) {
    throw InvalidArgument("spectral residual needs an image of at least 8x8");
  }
  if (image.min() == image.max()) {
    return SaliencyMap(Grid2D(image.width(), image.height()), ModelId::spectral_residual());
  }
  const Grid2D small = detail::sr_downscale(image, cfg.working_side);
  const std::size_t w = small.width();
  const std::size_t h = small.height();

  std::vector<double> spectrum(2 * w * h, 0.0);
  for (std::size_t i = 0; i < w * h; ++i) spectrum[2 * i] = small.values()[i];
  fft2d(spectrum, w, h, FFTW_FORWARD);
  detail::sr_residual(spectrum, w, h);
  fft2d(spectrum, w, h, FFTW_BACKWARD);

  Grid2D energy(w, h);
  const double scale = 1.0 / static_cast<double>(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    const double re = spectrum[2 * i] * scale;
    const double im = spectrum[2 * i + 1] * scale;
    energy.values()[i] = re * re + im * im;
  }
  return SaliencyMap(detail::sr_finish(energy, image.width(), image.height(), cfg.blur_sigma),
                     ModelId::spectral_residual());
}

// ---------------------------------------------------------------------------
// Itti-Koch

namespace {

constexpr std::size_t kPyramidLevels = 6;
constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kCenterSurround = {
    {{1, 3}, {1, 4}, {2, 4}, {2, 5}}};
// Conspicuity maps are accumulated at the coarsest center level.
constexpr std::size_t kSumLevel = 2;

std::vector<Grid2D> gaussian_pyramid(const Grid2D& base) {
  std::vector<Grid2D> levels{base};
  levels.reserve(kPyramidLevels);
  while (levels.size() < kPyramidLevels) {
    const Grid2D& prev = levels.back();
    levels.push_back(resize_bilinear(gaussian_blur(prev, 1.0), std::max<std::size_t>(1, prev.width() / 2),
                                     std::max<std::size_t>(1, prev.height() / 2)));
  }
  return levels;
}

Grid2D abs_diff(const Grid2D& a, const Grid2D& b) {
  Grid2D out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = std::abs(a.values()[i] - b.values()[i]);
  return out;
}

void accumulate(Grid2D& acc, const Grid2D& add) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc.values()[i] += add.values()[i];
}

Grid2D conspicuity(const Grid2D& channel) {
  const auto pyr = gaussian_pyramid(channel);
  const Grid2D& target = pyr[kSumLevel];
  Grid2D sum(target.width(), target.height());
  for (const auto& [c, s] : kCenterSurround) {
    const Grid2D& center = pyr[c];
    const Grid2D surround = resize_bilinear(pyr[s], center.width(), center.height());
    const Grid2D feature = itti_peak_normalize(abs_diff(center, surround));
    accumulate(sum, resize_bilinear(feature, target.width(), target.height()));
  }
  return itti_peak_normalize(sum);
}

}  // namespace

Grid2D itti_peak_normalize(const Grid2D& g) {
  // Contrast this small is rounding residue from blurring a flat channel.
  constexpr double kFlat = 1e-12;
  const double peak = g.max();
  Grid2D out(g.width(), g.height());
  if (peak <= kFlat) return out;
  for (std::size_t i = 0; i < g.size(); ++i) out.values()[i] = std::max(g.values()[i], 0.0) / peak;

  const auto w = static_cast<long long>(g.width());
  const auto h = static_cast<long long>(g.height());
  std::vector<double> maxima;
  for (long long y = 0; y < h; ++y) {
    for (long long x = 0; x < w; ++x) {
      const double v = out(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      bool is_max = true;
      for (long long dy = -1; dy <= 1 && is_max; ++dy) {
        for (long long dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long long xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
          if (out(static_cast<std::size_t>(xx), static_cast<std::size_t>(yy)) >= v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) maxima.push_back(v);
    }
  }
  // drop one instance of the global maximum
  if (!maxima.empty()) maxima.erase(std::max_element(maxima.begin(), maxima.end()));
  double mean_other = 0.0;
  if (!maxima.empty()) {
    std::sort(maxima.begin(), maxima.end());
    for (double m : maxima) mean_other += m;
    mean_other /= static_cast<double>(maxima.size());
  }
  const double weight = (1.0 - mean_other) * (1.0 - mean_other);
  for (double& v : out.values()) v *= weight;
  return out;
}

SaliencyMap itti_saliency(const RgbImage& image) {
  const std::size_t w = image.r.width();
  const std::size_t h = image.r.height();
  if (!image.g.same_shape(image.r) || !image.b.same_shape(image.r)) {
    throw InvalidArgument("itti saliency needs three channels of equal dimensions");
  }
  const bool flat = image.r.min() == image.r.max() && image.g.min() == image.g.max() &&
                    image.b.min() == image.b.max();
  if (flat) return SaliencyMap(Grid2D(w, h), ModelId::itti());

  Grid2D intensity(w, h), red_green(w, h), blue_yellow(w, h);
  for (std::size_t i = 0; i < w * h; ++i) {
    const double r = image.r.values()[i];
    const double g = image.g.values()[i];
    const double b = image.b.values()[i];
    intensity.values()[i] = (r + g + b) / 3.0;
    red_green.values()[i] = r - g;
    blue_yellow.values()[i] = b - (r + g) / 2.0;
  }

  Grid2D total = conspicuity(intensity);
  accumulate(total, conspicuity(red_green));
  accumulate(total, conspicuity(blue_yellow));
  for (double& v : total.values()) v /= 3.0;
  return SaliencyMap(resize_bilinear(total, w, h), ModelId::itti());
}

SaliencyMap load_external_map(const std::filesystem::path& path, std::size_t target_w,
                              std::size_t target_h) {
  const Grid2D raw = is_image_file(path) ? load_grayscale(path) : load_text_matrix(path);
  return SaliencyMap(resize_bilinear(raw, target_w, target_h),
                     ModelId::external(path.stem().string()));
}

}  // namespace vpsal

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "vpsal/errors.hpp"
#include "vpsal/vpoint.hpp"

namespace vpsal {
namespace {

constexpr std::size_t kBins = 256;

std::size_t histogram_bin(double v) {
  return std::min(kBins - 1, static_cast<std::size_t>(std::max(v, 0.0) * kBins));
}

Grid2D sobel_magnitude(const Grid2D& img) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  Grid2D mag(w, h);
  auto at = [&](long long x, long long y) {
    return img(reflect_index(x, w), reflect_index(y, h));
  };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto xi = static_cast<long long>(x);
      const auto yi = static_cast<long long>(y);
      const double gx = (at(xi + 1, yi - 1) + 2.0 * at(xi + 1, yi) + at(xi + 1, yi + 1)) -
                        (at(xi - 1, yi - 1) + 2.0 * at(xi - 1, yi) + at(xi - 1, yi + 1));
      const double gy = (at(xi - 1, yi + 1) + 2.0 * at(xi, yi + 1) + at(xi + 1, yi + 1)) -
                        (at(xi - 1, yi - 1) + 2.0 * at(xi, yi - 1) + at(xi + 1, yi - 1));
      mag(x, y) = std::hypot(gx, gy);
    }
  }
  return mag;
}

class HoughAccumulator {
 public:
  HoughAccumulator(std::size_t w, std::size_t h, const VpDetectorConfig& cfg)
      : theta_step_(cfg.theta_step_deg * std::numbers::pi / 180.0),
        rho_step_(cfg.rho_step_px),
        rho_max_(std::hypot(static_cast<double>(w), static_cast<double>(h))) {
    n_theta_ = static_cast<std::size_t>(std::lround(180.0 / cfg.theta_step_deg));
    n_rho_ = static_cast<std::size_t>(std::ceil(2.0 * rho_max_ / rho_step_)) + 1;
    votes_.assign(n_theta_ * n_rho_, 0.0);
    cos_.resize(n_theta_);
    sin_.resize(n_theta_);
    for (std::size_t t = 0; t < n_theta_; ++t) {
      cos_[t] = std::cos(theta(t));
      sin_[t] = std::sin(theta(t));
    }
  }

  void vote(double x, double y) {
    for (std::size_t t = 0; t < n_theta_; ++t) {
      const double rho = x * cos_[t] + y * sin_[t];
      votes_[t * n_rho_ + rho_bin(rho)] += 1.0;
    }
  }

  std::size_t n_theta() const { return n_theta_; }
  std::size_t n_rho() const { return n_rho_; }
  double at(std::size_t t, std::size_t r) const { return votes_[t * n_rho_ + r]; }
  double theta(std::size_t t) const { return static_cast<double>(t) * theta_step_; }
  double rho(double r) const { return r * rho_step_ - rho_max_; }

 private:
  std::size_t rho_bin(double rho) const {
    return static_cast<std::size_t>(std::lround((rho + rho_max_) / rho_step_));
  }

  double theta_step_;
  double rho_step_;
  double rho_max_;
  std::size_t n_theta_ = 0;
  std::size_t n_rho_ = 0;
  std::vector<double> votes_;
  std::vector<double> cos_, sin_;
};

bool near_axis(double theta, double exclusion) {
  const double quarter = std::numbers::pi / 2.0;
  const double m = std::fmod(theta, quarter);
  return std::min(m, quarter - m) <= exclusion + 1e-9;
}

std::vector<detail::HoughLine> find_lines(const HoughAccumulator& acc, const VpDetectorConfig& cfg) {
  const double exclusion = cfg.axis_exclusion_deg * std::numbers::pi / 180.0;
  struct Cell {
    double votes;
    std::size_t t, r;
  };
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < acc.n_theta(); ++t) {
    if (near_axis(acc.theta(t), exclusion)) continue;
    for (std::size_t r = 0; r < acc.n_rho(); ++r) {
      const double v = acc.at(t, r);
      if (v >= static_cast<double>(cfg.min_line_votes)) cells.push_back({v, t, r});
    }
  }
  // strongest first; index order breaks ties deterministically
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.votes > b.votes; });

  const auto n_theta = static_cast<long long>(acc.n_theta());
  const auto n_rho = static_cast<long long>(acc.n_rho());
  // the line (theta, rho) equals (theta + pi, -rho); wrap with a rho flip
  auto close = [&](const Cell& a, const Cell& b) {
    const long long dt = std::llabs(static_cast<long long>(a.t) - static_cast<long long>(b.t));
    const long long dr = std::llabs(static_cast<long long>(a.r) - static_cast<long long>(b.r));
    if (dt <= cfg.nms_theta_bins && dr <= cfg.nms_rho_bins) return true;
    const long long dr_flip =
        std::llabs(static_cast<long long>(a.r) + static_cast<long long>(b.r) - (n_rho - 1));
    return n_theta - dt <= cfg.nms_theta_bins && dr_flip <= cfg.nms_rho_bins;
  };

  std::vector<Cell> peaks;
  for (const Cell& c : cells) {
    if (peaks.size() >= cfg.max_lines) break;
    if (!peaks.empty() && c.votes < cfg.min_peak_fraction * peaks.front().votes) break;
    if (std::any_of(peaks.begin(), peaks.end(), [&](const Cell& p) { return close(c, p); })) continue;
    peaks.push_back(c);
  }

  std::vector<detail::HoughLine> lines;
  for (const Cell& p : peaks) {
    // sub-bin refinement: vote-weighted mean over the 3x3 neighbourhood
    double sw = 0.0, st = 0.0, sr = 0.0;
    for (long long dt = -1; dt <= 1; ++dt) {
      const long long t = static_cast<long long>(p.t) + dt;
      if (t < 0 || t >= n_theta) continue;
      for (long long dr = -1; dr <= 1; ++dr) {
        const long long r = static_cast<long long>(p.r) + dr;
        if (r < 0 || r >= n_rho) continue;
        const double v = acc.at(static_cast<std::size_t>(t), static_cast<std::size_t>(r));
        sw += v;
        st += v * static_cast<double>(t);
        sr += v * static_cast<double>(r);
      }
    }
    const double t_ref = st / sw;
    const double theta = t_ref * cfg.theta_step_deg * std::numbers::pi / 180.0;
    lines.push_back({theta, acc.rho(sr / sw), p.votes});
  }
  return lines;
}

}  // namespace

namespace detail {

double otsu_threshold(const Grid2D& normalized) {
  std::array<double, kBins> hist{};
  for (double v : normalized.values()) hist[histogram_bin(v)] += 1.0;
  const double total = static_cast<double>(normalized.size());
  double sum_all = 0.0;
  for (std::size_t i = 0; i < kBins; ++i) sum_all += static_cast<double>(i) * hist[i];

  double best = -1.0;
  std::size_t best_bin = 0;
  double w_bg = 0.0, sum_bg = 0.0;
  for (std::size_t t = 0; t + 1 < kBins; ++t) {
    w_bg += hist[t];
    sum_bg += static_cast<double>(t) * hist[t];
    const double w_fg = total - w_bg;
    if (w_bg == 0.0 || w_fg == 0.0) continue;
    const double diff = sum_bg / w_bg - (sum_all - sum_bg) / w_fg;
    const double between = w_bg * w_fg * diff * diff;
    if (between > best) {
      best = between;
      best_bin = t;
    }
  }
  // pixels in bins above best_bin are foreground
  return static_cast<double>(best_bin + 1) / static_cast<double>(kBins);
}


std::vector<HoughLine> hough_lines(const Grid2D& image, const VpDetectorConfig& cfg) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  Grid2D mag = sobel_magnitude(image);
  const double peak = mag.max();
  if (!(peak > 0.0)) throw NoDetectionError("no edges in image");
  for (double& v : mag.values()) v /= peak;
  const double threshold = detail::otsu_threshold(mag);

  HoughAccumulator acc(w, h, cfg);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (histogram_bin(mag(x, y)) >= histogram_bin(threshold)) {
        acc.vote(static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5);
      }
    }
  }

  return find_lines(acc, cfg);
}

}  // namespace detail

VpDetection detect_vp(const Grid2D& image, const VpDetectorConfig& cfg) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (w < 64 || h < 64) throw InvalidArgument("VP detection needs an image of at least 64x64");

  const auto lines = detail::hough_lines(image, cfg);
  if (lines.size() < 2) throw NoDetectionError("fewer than two usable lines");

  const double fw = static_cast<double>(w);
  const double fh = static_cast<double>(h);
  const double x_lo = -0.25 * fw, x_hi = 1.25 * fw;
  const double y_lo = -0.25 * fh, y_hi = 1.25 * fh;
  const double min_sin = std::sin(cfg.theta_step_deg * std::numbers::pi / 180.0);

  struct Vote {
    double x, y, weight;
  };
  std::map<std::pair<long long, long long>, std::vector<Vote>> cells;
  double total = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const detail::HoughLine& a = lines[i];
      const detail::HoughLine& b = lines[j];
      const double det = std::sin(b.theta - a.theta);
      if (std::abs(det) < min_sin) continue;
      const double ca = std::cos(a.theta), sa = std::sin(a.theta);
      const double cb = std::cos(b.theta), sb = std::sin(b.theta);
      const double x = (a.rho * sb - b.rho * sa) / det;
      const double y = (b.rho * ca - a.rho * cb) / det;
      if (!(x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi)) continue;
      const double weight = a.strength * b.strength;
      const auto key = std::make_pair(static_cast<long long>(std::floor((y - y_lo) / cfg.vote_cell_px)),
                                      static_cast<long long>(std::floor((x - x_lo) / cfg.vote_cell_px)));
      cells[key].push_back({x, y, weight});
      total += weight;
    }
  }
  if (cells.empty()) throw NoDetectionError("no line intersections near the frame");

  const std::vector<Vote>* best = nullptr;
  double best_weight = -1.0;
  for (const auto& [key, votes] : cells) {
    double sum = 0.0;
    for (const Vote& v : votes) sum += v.weight;
    if (sum > best_weight) {
      best_weight = sum;
      best = &votes;
    }
  }
  double cx = 0.0, cy = 0.0;
  for (const Vote& v : *best) {
    cx += v.x * v.weight;
    cy += v.y * v.weight;
  }
  return VpDetection{{cx / best_weight, cy / best_weight}, best_weight / total};
}

}  // namespace vpsal

#include "vpsal/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "vpsal/errors.hpp"
#include "vpsal/image_io.hpp"

namespace vpsal {

std::vector<std::size_t> FixationSet::pixel_indices(std::size_t width, std::size_t height) const {
  if (points_.empty()) throw InvalidArgument("fixation set is empty");
  std::vector<std::size_t> out;
  out.reserve(points_.size());
  for (const Point& p : points_) {
    const long long x = std::llround(p.x);
    const long long y = std::llround(p.y);
    if (x < 0 || y < 0 || x >= static_cast<long long>(width) || y >= static_cast<long long>(height)) {
      throw InvalidArgument("fixation (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                            ") lies outside the " + std::to_string(width) + "x" +
                            std::to_string(height) + " frame");
    }
    out.push_back(static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x));
  }
  return out;
}

FixationSet FixationSet::clipped_to(std::size_t width, std::size_t height) const {
  std::vector<Point> kept;
  for (const Point& p : points_) {
    const long long x = std::llround(p.x);
    const long long y = std::llround(p.y);
    if (x >= 0 && y >= 0 && x < static_cast<long long>(width) && y < static_cast<long long>(height)) {
      kept.push_back(p);
    }
  }
  return FixationSet(std::move(kept));
}

FixationSet load_fixations(const std::filesystem::path& path) {
  std::vector<Point> points;
  if (is_image_file(path)) {
    const Grid2D map = load_grayscale(path);
    for (std::size_t y = 0; y < map.height(); ++y) {
      for (std::size_t x = 0; x < map.width(); ++x) {
        if (map(x, y) > 0.0) points.push_back({static_cast<double>(x), static_cast<double>(y)});
      }
    }
  } else {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                 line.end());
      if (line.empty()) continue;
      if (!header) {
        if (line != "x,y") throw IoError(path.string() + ": expected header \"x,y\"");
        header = true;
        continue;
      }
      const auto comma = line.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument(line);
        std::size_t used_x = 0, used_y = 0;
        const std::string xs = line.substr(0, comma);
        const std::string ys = line.substr(comma + 1);
        const double x = std::stod(xs, &used_x);
        const double y = std::stod(ys, &used_y);
        if (used_x != xs.size() || used_y != ys.size() || !std::isfinite(x) || !std::isfinite(y)) {
          throw std::invalid_argument(line);
        }
        points.push_back({x, y});
      } catch (const std::exception&) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed fixation row");
      }
    }
    if (!header) throw IoError(path.string() + ": expected header \"x,y\"");
  }
  if (points.empty()) throw IoError(path.string() + ": no fixations");
  return FixationSet(std::move(points));
}

// ---------------------------------------------------------------------------
// AUC / NSS

FixationScorer::FixationScorer(std::size_t pixel_count, std::vector<std::size_t> fixated)
    : pixel_count_(pixel_count), fixated_(std::move(fixated)), is_pos_(pixel_count, 0) {
  if (fixated_.empty()) throw InvalidArgument("scoring needs at least one fixation");
  for (std::size_t i : fixated_) {
    if (i >= pixel_count_) throw InvalidArgument("fixation index outside the map");
    if (!is_pos_[i]) {
      is_pos_[i] = 1;
      unique_.push_back(i);
    }
  }
}

double FixationScorer::auc(std::span<const double> map) const {
  if (map.size() != pixel_count_) throw InvalidArgument("map size does not match the fixation frame");
  std::vector<double> pos;
  pos.reserve(unique_.size());
  for (std::size_t i : unique_) pos.push_back(map[i]);
  const std::size_t n_pos = pos.size();
  const std::size_t n_neg = map.size() - n_pos;
  if (n_neg == 0) throw InvalidArgument("AUC needs at least one non-fixated pixel");

  std::sort(pos.begin(), pos.end());
  std::vector<double> thresholds = pos;
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  const std::size_t k = thresholds.size();

  // reach[j]: negatives at or above exactly j of the ascending thresholds
  std::vector<std::size_t> reach(k + 1, 0);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (is_pos_[i]) continue;
    const auto idx = std::upper_bound(thresholds.begin(), thresholds.end(), map[i]) - thresholds.begin();
    ++reach[static_cast<std::size_t>(idx)];
  }

  // Walk thresholds from the highest down.
  double area = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t fp = 0;
  for (std::size_t j = k; j-- > 0;) {
    fp += reach[j + 1];
    const auto tp =
        static_cast<std::size_t>(pos.end() - std::lower_bound(pos.begin(), pos.end(), thresholds[j]));
    const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
    const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
    area += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  area += (1.0 - prev_fpr) * (1.0 + prev_tpr) / 2.0;
  return area;
}

double FixationScorer::nss(std::span<const double> map) const {
  if (map.size() != pixel_count_) throw InvalidArgument("map size does not match the fixation frame");
  const auto [lo, hi] = std::minmax_element(map.begin(), map.end());
  if (*lo == *hi) throw ZeroVarianceError();
  const auto n = static_cast<double>(map.size());
  double sum = 0.0;
  for (double v : map) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : map) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  double acc = 0.0;
  for (std::size_t i : fixated_) acc += (map[i] - mean) / sd;
  return acc / static_cast<double>(fixated_.size());
}

double auc_judd(std::span<const double> map, std::span<const std::size_t> fixated) {
  return FixationScorer(map.size(), {fixated.begin(), fixated.end()}).auc(map);
}

double nss(std::span<const double> map, std::span<const std::size_t> fixated) {
  return FixationScorer(map.size(), {fixated.begin(), fixated.end()}).nss(map);
}

double auc_judd(const Grid2D& map, const FixationSet& fix) {
  const auto idx = fix.pixel_indices(map.width(), map.height());
  return auc_judd(map.values(), idx);
}

double nss(const Grid2D& map, const FixationSet& fix) {
  const auto idx = fix.pixel_indices(map.width(), map.height());
  const Grid2D z = standardize(map);
  double acc = 0.0;
  for (std::size_t i : idx) acc += z.values()[i];
  return acc / static_cast<double>(idx.size());
}

}  // namespace vpsal

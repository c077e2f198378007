#include "vpsal/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vpsal/errors.hpp"
#include "vpsal/image_io.hpp"

namespace vpsal {

std::string to_string(Metric m) { return m == Metric::auc ? "auc" : "nss"; }

Metric parse_metric(const std::string& text) {
  if (text == "auc") return Metric::auc;
  if (text == "nss") return Metric::nss;
  throw InvalidArgument("unknown metric '" + text + "'");
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw InvalidArgument("grid needs step > 0 and stop >= start");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    // snap away accumulated binary error so 0.642 prints as 0.642
    grid[i] = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return grid;
}

void SweepConfig::validate() const {
  if (alphas.empty()) throw InvalidArgument("alpha grid is empty");
  if (window_lengths.empty()) throw InvalidArgument("window grid is empty");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("alpha grid values must lie in [0, 1]");
  }
  for (double w : window_lengths) {
    if (!(w >= 1.0 && w <= max_side)) throw InvalidArgument("window lengths must lie in [1, max_side]");
  }
  if (!(smooth_sigma > 0.0)) throw InvalidArgument("smoothing sigma must be positive");
}

FusionParams SweepConfig::params(double alpha, double window) const {
  FusionParams p;
  p.alpha = alpha;
  p.window = VpWindow(window, max_side);
  p.shape = shape;
  p.smooth_sigma = smooth_sigma;
  return p;
}

// ---------------------------------------------------------------------------

SaliencyMap compute_saliency(const DatasetEntry& entry, const ModelId& model, const RgbImage& image) {
  switch (model.kind()) {
    case ModelId::Kind::spectral_residual:
      return spectral_residual(luminance(image));
    case ModelId::Kind::itti:
      return itti_saliency(image);
    case ModelId::Kind::external:
      break;
  }
  const auto it = entry.maps.find(model.external_name());
  if (it == entry.maps.end()) {
    throw IoError("no precomputed map for model '" + model.external_name() + "'");
  }
  const SaliencyMap loaded = load_external_map(it->second, image.width(), image.height());
  return SaliencyMap(loaded.grid(), model);
}

PreparedDataset prepare_dataset(const DatasetManifest& m, const ModelId& model) {
  PreparedDataset out;
  out.name = m.name;
  for (const DatasetEntry& e : m.entries) {
    try {
      const RgbImage rgb = load_rgb(e.image);
      const std::size_t w = rgb.width();
      const std::size_t h = rgb.height();
      const Point center = vp_center(VpAnnotation::checked(e.vp_rect, w, h));
      check_vp_center(center, w, h);
      FixationSet fix = load_fixations(e.fixations).clipped_to(w, h);
      if (fix.empty()) throw InvalidArgument("no fixations inside the frame");
      auto idx = fix.pixel_indices(w, h);
      out.images.push_back(PreparedImage{e.id, w, h, compute_saliency(e, model, rgb), center, std::move(fix),
                                         std::move(idx)});
    } catch (const Error& err) {
      out.skipped.push_back({e.id, err.what()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EvalResult evaluate_prepared(const PreparedDataset& data, const ModelId& model, const FusionParams& params) {
  params.validate();
  EvalResult out;
  out.dataset = data.name;
  out.model = model;
  out.params = params;
  out.skipped = data.skipped;
  auto score = [](const Grid2D& map, const FixationSet& fix) {
    return ScorePair{auc_judd(map, fix), nss(map, fix)};
  };
  for (const PreparedImage& img : data.images) {
    try {
      const Grid2D frame(img.width, img.height);
      EvalRecord rec;
      rec.image_id = img.id;
      rec.original = score(smoothed_saliency(img.saliency, params), img.fixations);
      rec.vp_only = score(smoothed_vp_map(img.vp_center, params, img.width, img.height), img.fixations);
      rec.combined = score(predict(frame, img.saliency, img.vp_center, params).grid, img.fixations);
      out.records.push_back(std::move(rec));
    } catch (const Error& err) {
      out.skipped.push_back({img.id, err.what()});
    }
  }
  return out;
}

EvalResult evaluate_dataset(const DatasetManifest& m, const ModelId& model, const FusionParams& params) {
  params.validate();
  return evaluate_prepared(prepare_dataset(m, model), model, params);
}

// ---------------------------------------------------------------------------

ScoreTable compute_score_table(const PreparedDataset& data, const SweepConfig& cfg) {
  cfg.validate();
  const bool use_nss = cfg.metric == Metric::nss;
  const std::size_t n_w = cfg.window_lengths.size();
  const std::size_t n_a = cfg.alphas.size();

  ScoreTable table;
  table.alphas = cfg.alphas;
  table.windows = cfg.window_lengths;
  table.skipped = data.skipped;
  table.vp_only.assign(n_w, {});
  table.combined.assign(n_w, std::vector<std::vector<double>>(n_a));

  for (const PreparedImage& img : data.images) {
    const std::size_t w = img.width;
    const std::size_t h = img.height;
    const FusionParams base = cfg.params(1.0, cfg.window_lengths.front());
    const double sigma = base.native_sigma(w, h);
    try {
      const FixationScorer scorer(w * h, img.fixated);
      const Grid2D bs = gaussian_blur(img.saliency.grid(), sigma);
      const double original = scorer.score(bs.values(), use_nss);

      std::vector<double> vp_scores(n_w);
      std::vector<std::vector<double>> cell_scores(n_w, std::vector<double>(n_a));
      std::vector<double> mixed(w * h);
      for (std::size_t wi = 0; wi < n_w; ++wi) {
        const FusionParams p = cfg.params(1.0, cfg.window_lengths[wi]);
        const Grid2D bv = blurred_vp_map(img.vp_center, p.native_window(w, h), cfg.shape, w, h, sigma);
        vp_scores[wi] = scorer.score(bv.values(), use_nss);
        auto s = bs.values();
        auto v = bv.values();
        for (std::size_t ai = 0; ai < n_a; ++ai) {
          const double alpha = cfg.alphas[ai];
          const double beta = 1.0 - alpha;
          for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = alpha * s[i] + beta * v[i];
          cell_scores[wi][ai] = scorer.score(mixed, use_nss);
        }
      }

      table.image_ids.push_back(img.id);
      table.original.push_back(original);
      for (std::size_t wi = 0; wi < n_w; ++wi) {
        table.vp_only[wi].push_back(vp_scores[wi]);
        for (std::size_t ai = 0; ai < n_a; ++ai) table.combined[wi][ai].push_back(cell_scores[wi][ai]);
      }
    } catch (const Error& err) {
      table.skipped.push_back({img.id, err.what()});
    }
  }
  return table;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Higher score wins; among equal scores the larger alpha, i.e. the least
// reliance on the VP prior.
bool prefer_alpha(double score, double alpha, double best_score, double best_alpha) {
  return score > best_score || (score == best_score && alpha > best_alpha);
}

double mean_over(const std::vector<double>& xs, const std::vector<std::size_t>& idx) {
  double sum = 0.0;
  for (std::size_t i : idx) sum += xs[i];
  return sum / static_cast<double>(idx.size());
}

}  // namespace

SweepResult summarize_sweep(const ScoreTable& table, const SweepConfig& cfg, const std::string& dataset) {
  if (table.image_count() == 0) throw InvalidArgument("no usable images in dataset");
  SweepResult r;
  r.dataset = dataset;
  r.config = cfg;
  r.alphas = table.alphas;
  r.windows = table.windows;
  r.image_count = table.image_count();
  r.skipped = table.skipped;
  r.original_mean = mean_of(table.original);

  const std::size_t n_w = table.windows.size();
  const std::size_t n_a = table.alphas.size();
  r.mean_scores.assign(n_w, std::vector<double>(n_a));
  r.vp_only_mean.resize(n_w);
  r.curve.resize(n_w);
  r.curve_alpha.resize(n_w);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t wi = 0; wi < n_w; ++wi) {
    r.vp_only_mean[wi] = mean_of(table.vp_only[wi]);
    double row_best = -std::numeric_limits<double>::infinity();
    std::size_t row_ai = 0;
    for (std::size_t ai = 0; ai < n_a; ++ai) {
      const double m = mean_of(table.combined[wi][ai]);
      r.mean_scores[wi][ai] = m;
      if (prefer_alpha(m, table.alphas[ai], row_best, table.alphas[row_ai])) {
        row_best = m;
        row_ai = ai;
      }
    }
    r.curve_alpha[wi] = table.alphas[row_ai];
    // windows: the first (smallest) of equal scores wins
    if (row_best > best) {
      best = row_best;
      r.best_window_index = wi;
      r.best_alpha_index = row_ai;
    }
    r.curve[wi] = row_best;
  }
  r.best_score = best;
  r.best_alpha = table.alphas[r.best_alpha_index];
  r.best_window = table.windows[r.best_window_index];
  r.best_ratio = ratio_of(r.best_window, cfg.max_side);
  return r;
}

SweepResult sweep(const DatasetManifest& m, const SweepConfig& cfg) {
  cfg.validate();
  const PreparedDataset data = prepare_dataset(m, cfg.model);
  return summarize_sweep(compute_score_table(data, cfg), cfg, m.name);
}

// ---------------------------------------------------------------------------

Split half_split(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i-- > 1;) {
    const std::uint64_t range = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t u = rng();
    while (u >= limit) u = rng();
    std::swap(order[i], order[static_cast<std::size_t>(u % range)]);
  }
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
  return s;
}

CrossValResult cross_validate_table(const ScoreTable& table, const SweepConfig& cfg, std::size_t repeats,
                                    std::uint64_t seed, const std::string& dataset) {
  if (repeats < 2) throw InvalidArgument("cross-validation needs at least 2 repeats");
  const std::size_t n = table.image_count();
  if (n < 4) throw InvalidArgument("dataset too small for cross-validation (need at least 4 usable images)");

  const SweepResult full = summarize_sweep(table, cfg, dataset);
  const std::size_t wi = full.best_window_index;
  const auto& by_alpha = table.combined[wi];

  CrossValResult r;
  r.dataset = dataset;
  r.config = cfg;
  r.seed = seed;
  r.repeats = repeats;
  r.window = full.best_window;
  r.window_ratio = full.best_ratio;
  r.skipped = table.skipped;

  std::mt19937_64 rng(seed);
  std::vector<double> orig, vp, comb, alphas;
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    const Split split = half_split(n, rng);
    if (split.train.empty() || split.test.empty()) throw InvalidArgument("degenerate split");
    std::size_t best_ai = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t ai = 0; ai < by_alpha.size(); ++ai) {
      const double m = mean_over(by_alpha[ai], split.train);
      if (prefer_alpha(m, table.alphas[ai], best, table.alphas[best_ai])) {
        best = m;
        best_ai = ai;
      }
    }
    CrossValRepeat run;
    for (std::size_t i : split.train) run.train.push_back(table.image_ids[i]);
    for (std::size_t i : split.test) run.test.push_back(table.image_ids[i]);
    run.best_alpha = table.alphas[best_ai];
    run.original = mean_over(table.original, split.test);
    run.vp_only = mean_over(table.vp_only[wi], split.test);
    run.combined = mean_over(by_alpha[best_ai], split.test);
    orig.push_back(run.original);
    vp.push_back(run.vp_only);
    comb.push_back(run.combined);
    alphas.push_back(run.best_alpha);
    r.runs.push_back(std::move(run));
  }
  r.original = mean_std(orig);
  r.vp_only = mean_std(vp);
  r.combined = mean_std(comb);
  r.best_alpha = mean_std(alphas);
  r.combined_vs_original = t_test_two_sample(comb, orig);
  r.combined_vs_vp = t_test_two_sample(comb, vp);
  return r;
}

CrossValResult cross_validate(const DatasetManifest& m, const SweepConfig& cfg, std::size_t repeats,
                              std::uint64_t seed) {
  cfg.validate();
  if (repeats < 2) throw InvalidArgument("cross-validation needs at least 2 repeats");
  const PreparedDataset data = prepare_dataset(m, cfg.model);
  return cross_validate_table(compute_score_table(data, cfg), cfg, repeats, seed, m.name);
}

}  // namespace vpsal

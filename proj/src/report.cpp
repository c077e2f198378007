#include "vpsal/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "vpsal/errors.hpp"
#include "vpsal/image_io.hpp"

namespace vpsal {

using nlohmann::json;

double improvement_pct(double combined, double baseline) {
  if (baseline == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (combined - baseline) / baseline * 100.0;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

std::string fmt(double v, int precision) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

double mean_by(const std::vector<EvalRecord>& recs, double (*pick)(const EvalRecord&)) {
  double sum = 0.0;
  for (const auto& r : recs) sum += pick(r);
  return recs.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(recs.size());
}

json score_json(const ScorePair& s) { return {{"auc", num(s.auc)}, {"nss", num(s.nss)}}; }
ScorePair score_from(const json& j) { return {get_num(j.at("auc")), get_num(j.at("nss"))}; }

json skipped_json(const std::vector<SkippedImage>& skipped) {
  json arr = json::array();
  for (const auto& s : skipped) arr.push_back({{"image", s.id}, {"reason", s.reason}});
  return arr;
}

std::vector<SkippedImage> skipped_from(const json& j) {
  std::vector<SkippedImage> out;
  for (const auto& s : j) out.push_back({s.at("image").get<std::string>(), s.at("reason").get<std::string>()});
  return out;
}

json mean_std_json(const MeanStd& m) { return {{"mean", num(m.mean)}, {"std", num(m.std)}}; }
MeanStd mean_std_from(const json& j) { return {get_num(j.at("mean")), get_num(j.at("std"))}; }

TTestResult ttest_from(const json& j) {
  TTestResult t;
  t.t_stat = get_num(j.at("t_stat"));
  t.p_value = get_num(j.at("p_value"));
  t.df = get_num(j.at("df"));
  t.mean_a = get_num(j.at("mean_a"));
  t.mean_b = get_num(j.at("mean_b"));
  t.std_a = get_num(j.at("std_a"));
  t.std_b = get_num(j.at("std_b"));
  t.n_a = j.at("n_a").get<std::size_t>();
  t.n_b = j.at("n_b").get<std::size_t>();
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<TableRow> table_rows(const EvalResult& eval) {
  const std::string model = eval.model.str();
  const double ratio = eval.params.window.ratio();
  const double window = eval.params.window.length_px();
  const auto& recs = eval.records;
  return {
      TableRow{model, "auc", mean_by(recs, [](const EvalRecord& r) { return r.original.auc; }),
               mean_by(recs, [](const EvalRecord& r) { return r.vp_only.auc; }),
               mean_by(recs, [](const EvalRecord& r) { return r.combined.auc; }), ratio, window},
      TableRow{model, "nss", mean_by(recs, [](const EvalRecord& r) { return r.original.nss; }),
               mean_by(recs, [](const EvalRecord& r) { return r.vp_only.nss; }),
               mean_by(recs, [](const EvalRecord& r) { return r.combined.nss; }), ratio, window},
  };
}

TableRow table_row(const SweepResult& s) {
  return TableRow{s.config.model.str(),
                  to_string(s.config.metric),
                  s.original_mean,
                  s.vp_only_mean.at(s.best_window_index),
                  s.best_score,
                  s.best_ratio,
                  s.best_window};
}

std::string rows_to_csv(const std::vector<TableRow>& rows) {
  std::string out = "model,metric,original,vp_only,combined,ratio,window_size,imp_vs_orig_pct,imp_vs_vp_pct\n";
  for (const auto& r : rows) {
    out += r.model + "," + r.metric + "," + fmt(r.original, 4) + "," + fmt(r.vp_only, 4) + "," +
           fmt(r.combined, 4) + "," + fmt(r.ratio, 4) + "," + fmt(r.window_size, 0) + "," +
           fmt(r.imp_vs_orig_pct(), 2) + "," + fmt(r.imp_vs_vp_pct(), 2) + "\n";
  }
  return out;
}

std::string eval_to_csv(const EvalResult& eval) {
  std::string out = "image,original_auc,original_nss,vp_only_auc,vp_only_nss,combined_auc,combined_nss\n";
  for (const auto& r : eval.records) {
    out += r.image_id + "," + fmt(r.original.auc, 6) + "," + fmt(r.original.nss, 6) + "," +
           fmt(r.vp_only.auc, 6) + "," + fmt(r.vp_only.nss, 6) + "," + fmt(r.combined.auc, 6) + "," +
           fmt(r.combined.nss, 6) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

json to_json(const FusionParams& p) {
  return {{"alpha", p.alpha},
          {"window", p.window.length_px()},
          {"max_side", p.window.max_side_px()},
          {"ratio", p.window.ratio()},
          {"shape", to_string(p.shape)},
          {"smooth_sigma", p.smooth_sigma}};
}

FusionParams fusion_params_from_json(const json& j) {
  FusionParams p;
  p.alpha = j.at("alpha").get<double>();
  p.window = VpWindow(j.at("window").get<double>(), j.at("max_side").get<double>());
  p.shape = parse_vp_shape(j.at("shape").get<std::string>());
  p.smooth_sigma = j.at("smooth_sigma").get<double>();
  return p;
}

json to_json(const SweepConfig& cfg) {
  return {{"model", cfg.model.str()},
          {"metric", to_string(cfg.metric)},
          {"shape", to_string(cfg.shape)},
          {"max_side", cfg.max_side},
          {"smooth_sigma", cfg.smooth_sigma},
          {"alphas", cfg.alphas},
          {"window_lengths", cfg.window_lengths}};
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig cfg;
  cfg.model = ModelId::parse(j.at("model").get<std::string>());
  cfg.metric = parse_metric(j.at("metric").get<std::string>());
  cfg.shape = parse_vp_shape(j.at("shape").get<std::string>());
  cfg.max_side = j.at("max_side").get<double>();
  cfg.smooth_sigma = j.at("smooth_sigma").get<double>();
  cfg.alphas = j.at("alphas").get<std::vector<double>>();
  cfg.window_lengths = j.at("window_lengths").get<std::vector<double>>();
  return cfg;
}

json to_json(const TTestResult& t) {
  return {{"t_stat", num(t.t_stat)}, {"p_value", num(t.p_value)}, {"df", num(t.df)},
          {"mean_a", num(t.mean_a)}, {"mean_b", num(t.mean_b)},   {"std_a", num(t.std_a)},
          {"std_b", num(t.std_b)},   {"n_a", t.n_a},              {"n_b", t.n_b}};
}

json to_json(const EvalResult& eval) {
  json recs = json::array();
  for (const auto& r : eval.records) {
    recs.push_back({{"image", r.image_id},
                    {"original", score_json(r.original)},
                    {"vp_only", score_json(r.vp_only)},
                    {"combined", score_json(r.combined)}});
  }
  return {{"kind", "eval"},
          {"dataset", eval.dataset},
          {"model", eval.model.str()},
          {"params", to_json(eval.params)},
          {"records", recs},
          {"skipped", skipped_json(eval.skipped)}};
}

EvalResult eval_from_json(const json& j) {
  EvalResult e;
  e.dataset = j.at("dataset").get<std::string>();
  e.model = ModelId::parse(j.at("model").get<std::string>());
  e.params = fusion_params_from_json(j.at("params"));
  for (const auto& r : j.at("records")) {
    e.records.push_back({r.at("image").get<std::string>(), score_from(r.at("original")),
                         score_from(r.at("vp_only")), score_from(r.at("combined"))});
  }
  e.skipped = skipped_from(j.at("skipped"));
  return e;
}

json to_json(const SweepResult& s) {
  json mean_scores = json::array();
  for (const auto& row : s.mean_scores) {
    json r = json::array();
    for (double v : row) r.push_back(num(v));
    mean_scores.push_back(r);
  }
  json curve = json::array();
  for (std::size_t wi = 0; wi < s.windows.size(); ++wi) {
    curve.push_back({{"window", s.windows[wi]},
                     {"ratio", ratio_of(s.windows[wi], s.config.max_side)},
                     {"best_alpha", s.curve_alpha[wi]},
                     {"score", num(s.curve[wi])},
                     {"vp_only", num(s.vp_only_mean[wi])}});
  }
  return {{"kind", "sweep"},
          {"dataset", s.dataset},
          {"config", to_json(s.config)},
          {"image_count", s.image_count},
          {"original_mean", num(s.original_mean)},
          {"best",
           {{"alpha", s.best_alpha},
            {"window", s.best_window},
            {"ratio", s.best_ratio},
            {"score", num(s.best_score)},
            {"alpha_index", s.best_alpha_index},
            {"window_index", s.best_window_index}}},
          {"curve", curve},
          {"mean_scores", mean_scores},
          {"skipped", skipped_json(s.skipped)}};
}

SweepResult sweep_from_json(const json& j) {
  SweepResult s;
  s.dataset = j.at("dataset").get<std::string>();
  s.config = sweep_config_from_json(j.at("config"));
  s.alphas = s.config.alphas;
  s.windows = s.config.window_lengths;
  s.image_count = j.at("image_count").get<std::size_t>();
  s.original_mean = get_num(j.at("original_mean"));
  const json& b = j.at("best");
  s.best_alpha = b.at("alpha").get<double>();
  s.best_window = b.at("window").get<double>();
  s.best_ratio = b.at("ratio").get<double>();
  s.best_score = get_num(b.at("score"));
  s.best_alpha_index = b.at("alpha_index").get<std::size_t>();
  s.best_window_index = b.at("window_index").get<std::size_t>();
  for (const auto& c : j.at("curve")) {
    s.curve.push_back(get_num(c.at("score")));
    s.curve_alpha.push_back(c.at("best_alpha").get<double>());
    s.vp_only_mean.push_back(get_num(c.at("vp_only")));
  }
  for (const auto& row : j.at("mean_scores")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(get_num(v));
    s.mean_scores.push_back(std::move(r));
  }
  s.skipped = skipped_from(j.at("skipped"));
  return s;
}

json to_json(const CrossValResult& cv) {
  json runs = json::array();
  for (const auto& r : cv.runs) {
    runs.push_back({{"train", r.train},
                    {"test", r.test},
                    {"best_alpha", r.best_alpha},
                    {"original", num(r.original)},
                    {"vp_only", num(r.vp_only)},
                    {"combined", num(r.combined)}});
  }
  return {{"kind", "crossval"},
          {"dataset", cv.dataset},
          {"config", to_json(cv.config)},
          {"seed", cv.seed},
          {"repeats", cv.repeats},
          {"split_algorithm", kSplitAlgorithm},
          {"window", cv.window},
          {"window_ratio", cv.window_ratio},
          {"aggregate",
           {{"original", mean_std_json(cv.original)},
            {"vp_only", mean_std_json(cv.vp_only)},
            {"combined", mean_std_json(cv.combined)},
            {"best_alpha", mean_std_json(cv.best_alpha)}}},
          {"t_tests", {{"combined_vs_original", to_json(cv.combined_vs_original)},
                       {"combined_vs_vp_only", to_json(cv.combined_vs_vp)}}},
          {"runs", runs},
          {"skipped", skipped_json(cv.skipped)}};
}

CrossValResult crossval_from_json(const json& j) {
  CrossValResult cv;
  cv.dataset = j.at("dataset").get<std::string>();
  cv.config = sweep_config_from_json(j.at("config"));
  cv.seed = j.at("seed").get<std::uint64_t>();
  cv.repeats = j.at("repeats").get<std::size_t>();
  cv.window = j.at("window").get<double>();
  cv.window_ratio = j.at("window_ratio").get<double>();
  const json& agg = j.at("aggregate");
  cv.original = mean_std_from(agg.at("original"));
  cv.vp_only = mean_std_from(agg.at("vp_only"));
  cv.combined = mean_std_from(agg.at("combined"));
  cv.best_alpha = mean_std_from(agg.at("best_alpha"));
  cv.combined_vs_original = ttest_from(j.at("t_tests").at("combined_vs_original"));
  cv.combined_vs_vp = ttest_from(j.at("t_tests").at("combined_vs_vp_only"));
  for (const auto& r : j.at("runs")) {
    cv.runs.push_back({r.at("train").get<std::vector<std::string>>(), r.at("test").get<std::vector<std::string>>(),
                       r.at("best_alpha").get<double>(), get_num(r.at("original")), get_num(r.at("vp_only")),
                       get_num(r.at("combined"))});
  }
  cv.skipped = skipped_from(j.at("skipped"));
  return cv;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

std::vector<TableRow> report_rows(const ReportInputs& in) {
  std::vector<TableRow> rows;
  if (in.eval) rows = table_rows(*in.eval);
  if (in.sweep) {
    const TableRow best = table_row(*in.sweep);
    auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.metric == best.metric; });
    if (it != rows.end()) {
      *it = best;
    } else {
      rows.push_back(best);
    }
  }
  return rows;
}

void write_report(const std::filesystem::path& out_dir, const ReportInputs& in) {
  if (!in.eval && !in.sweep && !in.crossval) throw InvalidArgument("report needs at least one input");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());

  const auto rows = report_rows(in);
  json doc = {{"kind", "report"}};
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"model", r.model},
                     {"metric", r.metric},
                     {"original", num(r.original)},
                     {"vp_only", num(r.vp_only)},
                     {"combined", num(r.combined)},
                     {"ratio", num(r.ratio)},
                     {"window_size", num(r.window_size)},
                     {"imp_vs_orig_pct", num(r.imp_vs_orig_pct())},
                     {"imp_vs_vp_pct", num(r.imp_vs_vp_pct())}});
  }
  doc["table"] = table;
  if (in.sweep) doc["sweep"] = to_json(*in.sweep);
  if (in.crossval) doc["crossval"] = to_json(*in.crossval);
  if (in.eval) doc["eval"] = to_json(*in.eval);

  write_file_atomic(out_dir / "report.csv", rows_to_csv(rows));
  write_file_atomic(out_dir / "report.json", dump(doc));
}

}  // namespace vpsal

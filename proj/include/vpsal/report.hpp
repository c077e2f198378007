#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vpsal/harness.hpp"

namespace vpsal {

// (combined - baseline) / baseline * 100. NaN when the baseline is zero.
double improvement_pct(double combined, double baseline);

// One row of the summary table: a model/metric pair with its original, VP-only
// and combined scores and the window the combined score was obtained with.
struct TableRow {
  std::string model;
  std::string metric;
  double original = 0.0;
  double vp_only = 0.0;
  double combined = 0.0;
  double ratio = 0.0;
  double window_size = 0.0;

  double imp_vs_orig_pct() const { return improvement_pct(combined, original); }
  double imp_vs_vp_pct() const { return improvement_pct(combined, vp_only); }
};

// Dataset means of an evaluation, one row per metric.
std::vector<TableRow> table_rows(const EvalResult& eval);
// The sweep's best cell for its metric.
TableRow table_row(const SweepResult& sweep);

// Header: model,metric,original,vp_only,combined,ratio,window_size,imp_vs_orig_pct,imp_vs_vp_pct
std::string rows_to_csv(const std::vector<TableRow>& rows);

// Per-image scores: image,original_auc,original_nss,vp_only_auc,...
std::string eval_to_csv(const EvalResult& eval);

nlohmann::json to_json(const FusionParams& p);
nlohmann::json to_json(const SweepConfig& cfg);
nlohmann::json to_json(const EvalResult& eval);
nlohmann::json to_json(const SweepResult& sweep);
nlohmann::json to_json(const CrossValResult& cv);
nlohmann::json to_json(const TTestResult& t);

FusionParams fusion_params_from_json(const nlohmann::json& j);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
EvalResult eval_from_json(const nlohmann::json& j);
SweepResult sweep_from_json(const nlohmann::json& j);
CrossValResult crossval_from_json(const nlohmann::json& j);

// Deterministic pretty-printed dump with a trailing newline.
std::string dump(const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

struct ReportInputs {
  std::optional<EvalResult> eval;
  std::optional<SweepResult> sweep;
  std::optional<CrossValResult> crossval;
};

// Summary rows: evaluation means per metric, with the sweep's best cell
// replacing the evaluation row of the sweep's metric.
std::vector<TableRow> report_rows(const ReportInputs& in);

// Writes report.csv and report.json into out_dir. Throws IoError when the
// directory is not writable.
void write_report(const std::filesystem::path& out_dir, const ReportInputs& in);

}  // namespace vpsal

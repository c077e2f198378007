// Command-line front end. Each subcommand parses flags, calls the library and
// writes its outputs once the computation has finished.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vpsal/dataset.hpp"
#include "vpsal/errors.hpp"
#include "vpsal/fusion.hpp"
#include "vpsal/harness.hpp"
#include "vpsal/image_io.hpp"
#include "vpsal/report.hpp"

namespace fs = std::filesystem;
using namespace vpsal;
using nlohmann::json;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw UsageError(std::string(flag) + " expects " + std::to_string(count) + " comma-separated numbers");
  }
  return out;
}

fs::path default_out_dir() {
  const char* env = std::getenv("VPSAL_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

void write_json(const fs::path& dir, const std::string& name, const json& doc) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  write_file_atomic(dir / name, dump(doc));
}

// Model flag: sr, itti, external:<name> (manifest maps) or, for single-image
// commands, external:<path>.
ModelId parse_model(const std::string& text) {
  try {
    return ModelId::parse(text);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

SaliencyMap saliency_for_image(const ModelId& model, const RgbImage& img) {
  DatasetEntry entry;
  if (model.kind() == ModelId::Kind::external) entry.maps[model.external_name()] = model.external_name();
  return compute_saliency(entry, model, img);
}

struct FusionFlags {
  double alpha = kDefaultAlpha;
  double window = kDefaultWindow;
  double max_side = kDefaultMaxSide;
  double sigma = kDefaultSigmaRatio * kDefaultMaxSide;
  std::string shape = "square";

  void add_to(CLI::App* app, bool with_alpha) {
    if (with_alpha) app->add_option("--alpha", alpha, "Saliency weight in [0,1]")->capture_default_str();
    app->add_option("--window", window, "VP window length in the normalized frame")->capture_default_str();
    app->add_option("--max-side", max_side, "Longest side of the normalized frame")->capture_default_str();
    app->add_option("--sigma", sigma, "Smoothing sigma in the normalized frame")->capture_default_str();
    app->add_option("--shape", shape, "square | circle | gaussian")->capture_default_str();
  }

  FusionParams params() const {
    FusionParams p;
    try {
      p.alpha = alpha;
      p.window = VpWindow(window, max_side);
      p.shape = parse_vp_shape(shape);
      p.smooth_sigma = sigma;
      p.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

struct GridFlags {
  std::string metric = "auc";
  double alpha_step = 0.002;
  double window_min = 8, window_max = 120, window_step = 2;

  void add_to(CLI::App* app) {
    app->add_option("--metric", metric, "auc | nss")->capture_default_str();
    app->add_option("--alpha-step", alpha_step, "Alpha grid step over [0,1]")->capture_default_str();
    app->add_option("--window-min", window_min)->capture_default_str();
    app->add_option("--window-max", window_max)->capture_default_str();
    app->add_option("--window-step", window_step)->capture_default_str();
  }

  SweepConfig config(const ModelId& model, const FusionFlags& f) const {
    SweepConfig cfg;
    try {
      cfg.alphas = make_grid(0.0, 1.0, alpha_step);
      cfg.window_lengths = make_grid(window_min, window_max, window_step);
      cfg.shape = parse_vp_shape(f.shape);
      cfg.model = model;
      cfg.metric = parse_metric(metric);
      cfg.max_side = f.max_side;
      cfg.smooth_sigma = f.sigma;
      cfg.validate();
      for (double w : cfg.window_lengths) VpWindow(w, cfg.max_side);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }

  json echo() const {
    return {{"metric", metric},
            {"alpha_step", alpha_step},
            {"window_min", window_min},
            {"window_max", window_max},
            {"window_step", window_step}};
  }
};

json fusion_echo(const FusionFlags& f) {
  return {{"alpha", f.alpha}, {"window", f.window}, {"max_side", f.max_side}, {"sigma", f.sigma}, {"shape", f.shape}};
}

// --center x,y or --rect x,y,w,h (the rectangle's center).
std::optional<Point> vp_from_flags(const std::string& center, const std::string& rect, std::size_t w,
                                   std::size_t h) {
  if (!center.empty()) {
    const auto v = parse_numbers(center, 2, "--center");
    return Point{v[0], v[1]};
  }
  if (!rect.empty()) {
    const auto v = parse_numbers(rect, 4, "--rect");
    return vp_center(VpAnnotation::checked(Rect{v[0], v[1], v[2], v[3]}, w, h));
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-point guided saliency: prediction and evaluation"};
  app.require_subcommand(1, 1);

  std::string model_text = "sr";
  std::string in_path, out_path, manifest_path, center, rect;
  std::string out_dir;
  std::string eval_json, sweep_json, crossval_json;
  std::size_t frame_w = 0, frame_h = 0, repeats = 20;
  std::uint64_t seed = 0;
  FusionFlags fusion;
  GridFlags grid;

  auto* sal = app.add_subcommand("saliency", "Saliency map of one image as PNG");
  sal->add_option("--model", model_text, "sr | itti | external:<path>")->capture_default_str();
  sal->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  sal->add_option("--out", out_path)->required();

  auto* vpm = app.add_subcommand("vpmap", "VP prior map as PNG");
  auto* c_opt = vpm->add_option("--center", center, "x,y in pixels");
  auto* r_opt = vpm->add_option("--rect", rect, "x,y,w,h annotation rectangle");
  c_opt->excludes(r_opt);
  vpm->add_option("--in", in_path, "Image whose frame size is used")->check(CLI::ExistingFile);
  vpm->add_option("--width", frame_w);
  vpm->add_option("--height", frame_h);
  vpm->add_option("--out", out_path)->required();
  fusion.add_to(vpm, false);

  auto* det = app.add_subcommand("detect-vp", "Detect the vanishing point; prints \"x y confidence\"");
  det->add_option("--in", in_path)->required()->check(CLI::ExistingFile);

  auto* fuse = app.add_subcommand("fuse", "Combined saliency + VP prediction as PNG");
  fuse->add_option("--model", model_text, "sr | itti | external:<path>")->capture_default_str();
  fuse->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  fuse->add_option("--out", out_path)->required();
  auto* fc_opt = fuse->add_option("--center", center, "x,y in pixels (default: detected)");
  auto* fr_opt = fuse->add_option("--rect", rect, "x,y,w,h annotation rectangle");
  fc_opt->excludes(fr_opt);
  fusion.add_to(fuse, true);

  auto* ev = app.add_subcommand("eval", "Score a dataset at one operating point");
  auto* sw = app.add_subcommand("sweep", "Window x alpha grid search");
  auto* cv = app.add_subcommand("crossval", "Half-split cross-validation of alpha");
  for (auto* sub : {ev, sw, cv}) {
    sub->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
    sub->add_option("--model", model_text, "sr | itti | external:<name>")->capture_default_str();
    sub->add_option("--out-dir", out_dir, "Defaults to $VPSAL_OUT_DIR or .");
  }
  fusion.add_to(ev, true);
  fusion.add_to(sw, false);
  fusion.add_to(cv, false);
  grid.add_to(sw);
  grid.add_to(cv);
  cv->add_option("--repeats", repeats)->capture_default_str();
  cv->add_option("--seed", seed)->capture_default_str();

  auto* rep = app.add_subcommand("report", "Summary table from eval/sweep/crossval JSON");
  rep->add_option("--eval", eval_json)->check(CLI::ExistingFile);
  rep->add_option("--sweep", sweep_json)->check(CLI::ExistingFile);
  rep->add_option("--crossval", crossval_json)->check(CLI::ExistingFile);
  rep->add_option("--out-dir", out_dir, "Defaults to $VPSAL_OUT_DIR or .");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);

  try {
    if (sal->parsed()) {
      const ModelId model = parse_model(model_text);
      const SaliencyMap s = saliency_for_image(model, load_rgb(in_path));
      write_png_gray(out_path, s.grid());
    } else if (vpm->parsed()) {
      if (center.empty() && rect.empty()) throw UsageError("vpmap needs --center or --rect");
      if (!in_path.empty()) {
        const RgbImage img = load_rgb(in_path);
        frame_w = img.width();
        frame_h = img.height();
      }
      if (frame_w == 0 || frame_h == 0) throw UsageError("vpmap needs --in or --width/--height");
      const FusionParams p = fusion.params();
      const Point c = *vp_from_flags(center, rect, frame_w, frame_h);
      write_png_gray(out_path, build_vp_map(c, p.native_window(frame_w, frame_h), p.shape, frame_w, frame_h));
    } else if (det->parsed()) {
      const VpDetection d = detect_vp(load_grayscale(in_path));
      std::cout << d.point.x << " " << d.point.y << " " << d.confidence << "\n";
    } else if (fuse->parsed()) {
      const ModelId model = parse_model(model_text);
      const FusionParams p = fusion.params();
      const RgbImage img = load_rgb(in_path);
      auto c = vp_from_flags(center, rect, img.width(), img.height());
      if (!c) c = detect_vp(luminance(img)).point;
      const FusedMap f = predict(luminance(img), saliency_for_image(model, img), *c, p);
      write_png_gray(out_path, f.grid);
    } else if (ev->parsed()) {
      const ModelId model = parse_model(model_text);
      const FusionParams p = fusion.params();
      const EvalResult r = evaluate_dataset(load_manifest(manifest_path), model, p);
      json doc = to_json(r);
      doc["args"] = {{"manifest", manifest_path}, {"model", model_text}, {"fusion", fusion_echo(fusion)}};
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create output directory " + dir.string());
      write_file_atomic(dir / "eval.csv", eval_to_csv(r));
      write_json(dir, "eval.json", doc);
    } else if (sw->parsed()) {
      const SweepConfig cfg = grid.config(parse_model(model_text), fusion);
      const SweepResult r = sweep(load_manifest(manifest_path), cfg);
      json doc = to_json(r);
      doc["args"] = {{"manifest", manifest_path}, {"model", model_text}, {"fusion", fusion_echo(fusion)},
                     {"grid", grid.echo()}};
      write_json(dir, "sweep.json", doc);
    } else if (cv->parsed()) {
      const SweepConfig cfg = grid.config(parse_model(model_text), fusion);
      if (repeats == 0) throw UsageError("--repeats must be positive");
      const CrossValResult r = cross_validate(load_manifest(manifest_path), cfg, repeats, seed);
      json doc = to_json(r);
      doc["args"] = {{"manifest", manifest_path}, {"model", model_text}, {"fusion", fusion_echo(fusion)},
                     {"grid", grid.echo()}, {"repeats", repeats}, {"seed", seed}};
      write_json(dir, "crossval.json", doc);
    } else if (rep->parsed()) {
      ReportInputs in;
      if (!eval_json.empty()) in.eval = eval_from_json(read_json(eval_json));
      if (!sweep_json.empty()) in.sweep = sweep_from_json(read_json(sweep_json));
      if (!crossval_json.empty()) in.crossval = crossval_from_json(read_json(crossval_json));
      if (!in.eval && !in.sweep && !in.crossval) throw UsageError("report needs --eval, --sweep or --crossval");
      write_report(dir, in);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}

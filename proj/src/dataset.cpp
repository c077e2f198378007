#include "vpsal/dataset.hpp"

#include <fstream>

#include "json.hpp"
#include "vpsal/errors.hpp"

namespace vpsal {

using nlohmann::json;

namespace {

std::filesystem::path existing(const std::filesystem::path& base, const json& value, const std::string& what,
                               const std::string& entry) {
  if (!value.is_string()) throw IoError(entry + ": \"" + what + "\" must be a string path");
  auto p = base / value.get<std::string>();
  if (!std::filesystem::exists(p)) throw IoError(entry + ": " + what + " file not found: " + p.string());
  return p;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("malformed manifest " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw IoError("manifest " + path.string() + " lacks an \"entries\" array");
  }
  DatasetManifest m;
  m.name = doc.value("name", path.stem().string());
  const auto base = path.parent_path();

  const auto& entries = doc["entries"];
  if (entries.empty()) throw IoError("empty dataset");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    std::string label = "entry " + std::to_string(i);
    if (!e.is_object()) throw IoError(label + ": malformed record");
    if (e.contains("image") && e["image"].is_string()) label += " (" + e["image"].get<std::string>() + ")";
    if (!e.contains("image")) throw IoError(label + ": missing \"image\"");
    if (!e.contains("fixations")) throw IoError(label + ": missing \"fixations\"");
    if (!e.contains("vp_rect")) throw IoError(label + ": missing \"vp_rect\"");

    DatasetEntry entry;
    entry.id = e["image"].is_string() ? e["image"].get<std::string>() : "";
    entry.image = existing(base, e["image"], "image", label);
    entry.fixations = existing(base, e["fixations"], "fixations", label);

    const json& r = e["vp_rect"];
    if (!r.is_array() || r.size() != 4 || !std::all_of(r.begin(), r.end(), [](const json& v) {
          return v.is_number();
        })) {
      throw IoError(label + ": \"vp_rect\" must be [x, y, w, h]");
    }
    entry.vp_rect = Rect{r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()};
    if (!(entry.vp_rect.w >= 1.0) || !(entry.vp_rect.h >= 1.0)) {
      throw IoError(label + ": \"vp_rect\" width and height must be at least 1");
    }

    if (e.contains("maps")) {
      if (!e["maps"].is_object()) throw IoError(label + ": \"maps\" must be an object");
      for (const auto& [model, p] : e["maps"].items()) {
        entry.maps[model] = existing(base, p, "map '" + model + "'", label);
      }
    }
    m.entries.push_back(std::move(entry));
  }
  return m;
}

}  // namespace vpsal

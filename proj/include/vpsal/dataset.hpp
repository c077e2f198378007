#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vpsal/grid.hpp"

namespace vpsal {

struct DatasetEntry {
  std::string id;  // the "image" field as written in the manifest
  std::filesystem::path image;
  std::filesystem::path fixations;
  Rect vp_rect;
  // Optional precomputed maps keyed by external model name.
  std::map<std::string, std::filesystem::path> maps;
};

struct DatasetManifest {
  std::string name;
  std::vector<DatasetEntry> entries;
};

// Manifest JSON:
//   {"name": str,
//    "entries": [{"image": path, "fixations": path, "vp_rect": [x, y, w, h],
//                 "maps": {"<model>": path}}]}
// "maps" is optional. Paths are resolved against the manifest's directory and
// must exist. Throws IoError naming the offending entry.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace vpsal

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wxaug/dataset.hpp"

namespace wxaug {

struct ManifestEntry {
  std::string image_id;
  std::string image_file;  // PPM, relative to the manifest directory
  std::string gt_file;     // YOLO-format text, relative to the manifest directory
  std::uint32_t width = 0;
  std::uint32_t height = 0;
};

/// Dataset index: `manifest.json` next to the image/label files.
/// image_ids are unique and filename-safe ([A-Za-z0-9._-]); every
/// referenced file must exist at load time.
struct DatasetManifest {
  std::filesystem::path root;  // directory the entry paths resolve against
  std::vector<std::string> class_names;
  std::vector<ManifestEntry> entries;
};

DatasetManifest load_manifest(const std::filesystem::path& manifest_path);
void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_path);

/// Decodes every frame and parses every label file.
Dataset load_dataset(const DatasetManifest& manifest);

}  // namespace wxaug

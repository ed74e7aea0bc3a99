#include "wxaug/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wxaug/errors.hpp"
#include "wxaug/eval_io.hpp"
#include "wxaug/ppm.hpp"

namespace wxaug {
namespace {

using ordered_json = nlohmann::ordered_json;

bool filename_safe(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::vector<GroundTruthBox> all_ground_truth(const Dataset& dataset) {
  std::vector<GroundTruthBox> out;
  for (const auto& img : dataset) {
    out.insert(out.end(), img.ground_truth.begin(), img.ground_truth.end());
  }
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open manifest " + manifest_path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + manifest_path.string() + ": " + e.what());
  }
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("manifest " + manifest_path.string() + ": " + why);
  };
  if (!doc.is_object()) throw fail("top level must be an object");
  if (!doc.contains("class_names") || !doc["class_names"].is_array()) {
    throw fail("missing \"class_names\" array");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw fail("missing \"entries\" array");
  }

  DatasetManifest manifest;
  manifest.root = manifest_path.parent_path();
  for (const auto& name : doc["class_names"]) {
    if (!name.is_string()) throw fail("class names must be strings");
    manifest.class_names.push_back(name.get<std::string>());
  }

  std::set<std::string> seen_ids;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object()) throw fail("entries must be objects");
    for (const char* key : {"image_id", "image", "gt"}) {
      if (!e.contains(key) || !e[key].is_string()) {
        throw fail(std::string("entry missing string \"") + key + "\"");
      }
    }
    for (const char* key : {"width", "height"}) {
      if (!e.contains(key) || !e[key].is_number_unsigned() ||
          e[key].get<std::uint64_t>() == 0) {
        throw fail(std::string("entry missing positive \"") + key + "\"");
      }
    }
    ManifestEntry entry;
    entry.image_id = e["image_id"].get<std::string>();
    entry.image_file = e["image"].get<std::string>();
    entry.gt_file = e["gt"].get<std::string>();
    entry.width = e["width"].get<std::uint32_t>();
    entry.height = e["height"].get<std::uint32_t>();

    if (!filename_safe(entry.image_id)) {
      throw fail("image_id \"" + entry.image_id + "\" is not filename-safe");
    }
    if (!seen_ids.insert(entry.image_id).second) {
      throw fail("duplicate image_id \"" + entry.image_id + "\"");
    }
    for (const std::string& rel : {entry.image_file, entry.gt_file}) {
      if (!std::filesystem::exists(manifest.root / rel)) {
        throw fail("referenced file missing: " + (manifest.root / rel).string());
      }
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_path) {
  ordered_json doc;
  doc["class_names"] = manifest.class_names;
  doc["entries"] = ordered_json::array();
  for (const auto& e : manifest.entries) {
    ordered_json entry;
    entry["image_id"] = e.image_id;
    entry["image"] = e.image_file;
    entry["gt"] = e.gt_file;
    entry["width"] = e.width;
    entry["height"] = e.height;
    doc["entries"].push_back(std::move(entry));
  }
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + manifest_path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("short write to " + manifest_path.string());
}

Dataset load_dataset(const DatasetManifest& manifest) {
  Dataset dataset;
  dataset.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    DatasetImage img;
    img.image_id = e.image_id;
    img.frame = load_ppm(manifest.root / e.image_file);
    if (img.frame.width != e.width || img.frame.height != e.height) {
      throw InvalidInputError("manifest entry " + e.image_id +
                              ": declared dimensions do not match the image");
    }
    img.ground_truth = load_yolo_gt(manifest.root / e.gt_file, e.image_id, e.width, e.height);
    dataset.push_back(std::move(img));
  }
  return dataset;
}

}  // namespace wxaug

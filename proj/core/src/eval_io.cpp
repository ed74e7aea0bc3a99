#include "wxaug/eval_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wxaug/errors.hpp"

namespace wxaug {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<GroundTruthBox> parse_yolo_gt(const std::string& text,
                                          const std::string& image_id,
                                          std::uint32_t width, std::uint32_t height) {
  std::vector<GroundTruthBox> boxes;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long cls = -1;
    double cx = 0, cy = 0, w = 0, h = 0;
    if (!(fields >> cls >> cx >> cy >> w >> h) || cls < 0) {
      throw ParseError("yolo gt line " + std::to_string(line_no) +
                       ": expected `class cx cy w h`");
    }
    std::string trailing;
    if (fields >> trailing) {
      throw ParseError("yolo gt line " + std::to_string(line_no) + ": trailing data");
    }
    if (w <= 0 || h <= 0) {
      throw ParseError("yolo gt line " + std::to_string(line_no) +
                       ": box width/height must be positive");
    }
    const double fw = static_cast<double>(width);
    const double fh = static_cast<double>(height);
    boxes.push_back(GroundTruthBox{
        static_cast<std::uint32_t>(cls),
        BBox((cx - w / 2) * fw, (cy - h / 2) * fh, (cx + w / 2) * fw, (cy + h / 2) * fh),
        image_id});
  }
  return boxes;
}

std::vector<GroundTruthBox> load_yolo_gt(const std::filesystem::path& path,
                                         const std::string& image_id,
                                         std::uint32_t width, std::uint32_t height) {
  try {
    return parse_yolo_gt(read_text_file(path), image_id, width, height);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string yolo_gt_to_text(const std::vector<GroundTruthBox>& boxes,
                            std::uint32_t width, std::uint32_t height) {
  std::string out;
  char buf[160];
  for (const auto& g : boxes) {
    const double fw = static_cast<double>(width);
    const double fh = static_cast<double>(height);
    const double cx = (g.bbox.x_min + g.bbox.x_max) / 2 / fw;
    const double cy = (g.bbox.y_min + g.bbox.y_max) / 2 / fh;
    const double w = (g.bbox.x_max - g.bbox.x_min) / fw;
    const double h = (g.bbox.y_max - g.bbox.y_min) / fh;
    std::snprintf(buf, sizeof(buf), "%u %.9f %.9f %.9f %.9f\n", g.class_id, cx, cy, w, h);
    out += buf;
  }
  return out;
}

std::vector<Detection> parse_detections_jsonl(const std::string& text) {
  std::vector<Detection> dets;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("detections line " + std::to_string(line_no) + ": " + e.what());
    }
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError("detections line " + std::to_string(line_no) + ": " + why);
    };
    if (!obj.is_object()) throw fail("expected a JSON object");
    if (!obj.contains("image_id") || !obj["image_id"].is_string()) {
      throw fail("missing string \"image_id\"");
    }
    if (!obj.contains("class_id") || !obj["class_id"].is_number_integer() ||
        obj["class_id"].get<std::int64_t>() < 0) {
      throw fail("missing non-negative integer \"class_id\"");
    }
    if (!obj.contains("bbox") || !obj["bbox"].is_array() || obj["bbox"].size() != 4) {
      throw fail("\"bbox\" must be [x_min, y_min, x_max, y_max]");
    }
    for (const auto& v : obj["bbox"]) {
      if (!v.is_number()) throw fail("\"bbox\" entries must be numbers");
    }
    if (!obj.contains("confidence") || !obj["confidence"].is_number()) {
      throw fail("missing numeric \"confidence\"");
    }
    const double conf = obj["confidence"].get<double>();
    if (!(conf >= 0.0 && conf <= 1.0)) throw fail("\"confidence\" outside [0, 1]");
    try {
      dets.push_back(Detection{obj["class_id"].get<std::uint32_t>(),
                               BBox(obj["bbox"][0].get<double>(), obj["bbox"][1].get<double>(),
                                    obj["bbox"][2].get<double>(), obj["bbox"][3].get<double>()),
                               conf, obj["image_id"].get<std::string>()});
    } catch (const InvalidInputError& e) {
      throw fail(e.what());
    }
  }
  return dets;
}

std::string detections_to_jsonl(const std::vector<Detection>& detections) {
  std::string out;
  for (const auto& d : detections) {
    ordered_json obj;
    obj["image_id"] = d.image_id;
    obj["class_id"] = d.class_id;
    obj["bbox"] = {d.bbox.x_min, d.bbox.y_min, d.bbox.x_max, d.bbox.y_max};
    obj["confidence"] = d.confidence;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<Detection> load_detections_jsonl(const std::filesystem::path& path) {
  try {
    return parse_detections_jsonl(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string eval_result_to_json(const EvalResult& result, const EvalConfig& config) {
  ordered_json doc;
  doc["map"] = result.map;
  doc["iou_thresh"] = config.iou_thresh;
  doc["interpolation"] =
      config.interpolation == ApInterpolation::kAllPoint ? "all_point" : "eleven_point";
  doc["classes"] = ordered_json::array();
  for (const auto& [cls, ap] : result.per_class_ap) {
    const ClassCounts& c = result.counts.at(cls);
    ordered_json entry;
    entry["class_id"] = cls;
    entry["ap"] = ap;
    entry["tp"] = c.tp;
    entry["fp"] = c.fp;
    entry["n_gt"] = c.n_gt;
    doc["classes"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace wxaug

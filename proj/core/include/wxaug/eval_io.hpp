#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wxaug/eval.hpp"

namespace wxaug {

/// Parses YOLO-format ground truth: one `class_id cx cy w h` line per
/// object, all coordinates normalized to [0, 1], converted to pixel boxes
/// with the supplied frame dimensions. Blank lines are ignored.
std::vector<GroundTruthBox> parse_yolo_gt(const std::string& text,
                                          const std::string& image_id,
                                          std::uint32_t width, std::uint32_t height);

std::vector<GroundTruthBox> load_yolo_gt(const std::filesystem::path& path,
                                         const std::string& image_id,
                                         std::uint32_t width, std::uint32_t height);

/// Serializes one ground-truth box back to a YOLO line (9 decimals).
std::string yolo_gt_to_text(const std::vector<GroundTruthBox>& boxes,
                            std::uint32_t width, std::uint32_t height);

/// Detections as JSON Lines, one object per line:
///   {"image_id": s, "class_id": i, "bbox": [x_min,y_min,x_max,y_max],
///    "confidence": f}
/// Unknown keys are ignored on parse so external detector wrappers may
/// attach extra fields. Parse errors carry the 1-based line number.
std::vector<Detection> parse_detections_jsonl(const std::string& text);
std::string detections_to_jsonl(const std::vector<Detection>& detections);
std::vector<Detection> load_detections_jsonl(const std::filesystem::path& path);

/// EvalResult as a JSON object with a per-class breakdown.
std::string eval_result_to_json(const EvalResult& result, const EvalConfig& config);

}  // namespace wxaug

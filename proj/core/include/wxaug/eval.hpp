#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wxaug {

/// Axis-aligned box in pixel coordinates. The constructor enforces
/// x_min < x_max and y_min < y_max (InvalidInputError otherwise), so
/// downstream code can assume positive area.
struct BBox {
  double x_min;
  double y_min;
  double x_max;
  double y_max;

  BBox(double x0, double y0, double x1, double y1);

  double area() const noexcept { return (x_max - x_min) * (y_max - y_min); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Intersection over union; 0 for disjoint boxes, 1 for identical ones.
double iou(const BBox& a, const BBox& b) noexcept;

struct Detection {
  std::uint32_t class_id;
  BBox bbox;
  double confidence;  // in [0, 1]
  std::string image_id;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct GroundTruthBox {
  std::uint32_t class_id;
  BBox bbox;
  std::string image_id;

  friend bool operator==(const GroundTruthBox&, const GroundTruthBox&) = default;
};

/// AP interpolation variant. All-point is the default and the one the
/// golden tests pin; the 11-point variant is kept for comparability with
/// older tooling.
enum class ApInterpolation { kAllPoint, kElevenPoint };

struct EvalConfig {
  double iou_thresh = 0.5;
  ApInterpolation interpolation = ApInterpolation::kAllPoint;
};

struct ClassCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t n_gt = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Per-class average precision plus the mean over classes that have at
/// least one ground-truth box. Classes that appear only in detections are
/// excluded from both maps and the mean.
struct EvalResult {
  double map = 0.0;
  std::map<std::uint32_t, double> per_class_ap;
  std::map<std::uint32_t, ClassCounts> counts;
};

/// Greedy matching within one (image_id, class_id) group: detections are
/// taken in order of descending confidence (ties keep input order), each
/// claiming the unmatched ground truth with the highest IoU >= iou_thresh.
/// Returns (detection, is_tp) pairs in that confidence order.
/// Throws InvalidInputError when inputs mix image or class ids,
/// InvalidParameterError when iou_thresh is outside (0, 1).
std::vector<std::pair<Detection, bool>> match_detections(
    const std::vector<Detection>& detections,
    const std::vector<GroundTruthBox>& ground_truth, double iou_thresh);

/// Average precision from TP/FP flags ordered by descending confidence.
/// All-point interpolation: the area under the precision envelope,
/// accumulated as sum(max precision at recall >= r_i) / n_gt over TP
/// positions. Returns 0 when n_gt == 0.
/// Throws InconsistentInputError when the flags contain more TPs than n_gt.
double average_precision(const std::vector<bool>& tp_flags, std::uint64_t n_gt,
                         ApInterpolation interpolation = ApInterpolation::kAllPoint);

/// Groups by (image_id, class_id), matches, pools each class's flags
/// across images in global confidence order (ties by input position), and
/// averages per-class AP over classes with ground truth.
/// Throws UndefinedMetricError when there is no ground truth at all.
EvalResult mean_average_precision(const std::vector<Detection>& detections,
                                  const std::vector<GroundTruthBox>& ground_truth,
                                  const EvalConfig& config = {});

}  // namespace wxaug

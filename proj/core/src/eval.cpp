#include "wxaug/eval.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "wxaug/errors.hpp"

namespace wxaug {

BBox::BBox(double x0, double y0, double x1, double y1)
    : x_min(x0), y_min(y0), x_max(x1), y_max(y1) {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw InvalidInputError("bbox requires x_min < x_max and y_min < y_max");
  }
}

double iou(const BBox& a, const BBox& b) noexcept {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

namespace {

void check_thresh(double iou_thresh) {
  if (!(iou_thresh > 0.0 && iou_thresh < 1.0)) {
    throw InvalidParameterError("iou_thresh must be in (0, 1), got " +
                                std::to_string(iou_thresh));
  }
}

/// Confidence-descending order, input order on ties. Shared by the
/// per-image matcher and the global per-class pooling so both agree on
/// how ties break.
std::vector<std::size_t> confidence_order(const std::vector<Detection>& dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });
  return order;
}

/// Core greedy matcher; returns is_tp per detection in `order` sequence.
std::vector<bool> greedy_match(const std::vector<Detection>& dets,
                               const std::vector<std::size_t>& order,
                               const std::vector<GroundTruthBox>& gts,
                               double iou_thresh) {
  std::vector<bool> gt_used(gts.size(), false);
  std::vector<bool> flags;
  flags.reserve(order.size());
  for (std::size_t idx : order) {
    double best_iou = 0.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gt_used[g]) continue;
      double v = iou(dets[idx].bbox, gts[g].bbox);
      if (v >= iou_thresh && v > best_iou) {
        best_iou = v;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      gt_used[best_gt] = true;
      flags.push_back(true);
    } else {
      flags.push_back(false);
    }
  }
  return flags;
}

}  // namespace

std::vector<std::pair<Detection, bool>> match_detections(
    const std::vector<Detection>& detections,
    const std::vector<GroundTruthBox>& ground_truth, double iou_thresh) {
  check_thresh(iou_thresh);

  std::optional<std::pair<std::string, std::uint32_t>> group;
  auto check_group = [&](const std::string& img, std::uint32_t cls) {
    if (!group) {
      group.emplace(img, cls);
    } else if (img != group->first || cls != group->second) {
      throw InvalidInputError("match_detections: records mix image or class ids");
    }
  };
  for (const auto& d : detections) check_group(d.image_id, d.class_id);
  for (const auto& g : ground_truth) check_group(g.image_id, g.class_id);

  auto order = confidence_order(detections);
  auto flags = greedy_match(detections, order, ground_truth, iou_thresh);

  std::vector<std::pair<Detection, bool>> out;
  out.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.emplace_back(detections[order[i]], flags[i]);
  }
  return out;
}

double average_precision(const std::vector<bool>& tp_flags, std::uint64_t n_gt,
                         ApInterpolation interpolation) {
  const std::uint64_t tp_total =
      static_cast<std::uint64_t>(std::count(tp_flags.begin(), tp_flags.end(), true));
  if (tp_total > n_gt) {
    throw InconsistentInputError("average_precision: " + std::to_string(tp_total) +
                                 " TPs exceed n_gt = " + std::to_string(n_gt));
  }
  if (n_gt == 0 || tp_flags.empty()) return 0.0;

  const std::size_t n = tp_flags.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  std::uint64_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp_flags[i]) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_gt);
  }
  // Precision envelope: best precision achievable at recall >= recall[i].
  std::vector<double> envelope(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running = std::max(running, precision[i]);
    envelope[i] = running;
  }

  if (interpolation == ApInterpolation::kAllPoint) {
    // Each TP advances recall by exactly 1/n_gt; summing the envelope at
    // TP positions and dividing once keeps the perfect-detector case at
    // exactly 1.0.
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (tp_flags[i]) sum += envelope[i];
    }
    return sum / static_cast<double>(n_gt);
  }

  // 11-point: mean of the envelope sampled at recalls 0.0, 0.1, ..., 1.0.
  double sum = 0.0;
  for (int t = 0; t <= 10; ++t) {
    const double r = static_cast<double>(t) / 10.0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (recall[i] >= r) {
        best = envelope[i];
        break;
      }
    }
    sum += best;
  }
  return sum / 11.0;
}

EvalResult mean_average_precision(const std::vector<Detection>& detections,
                                  const std::vector<GroundTruthBox>& ground_truth,
                                  const EvalConfig& config) {
  check_thresh(config.iou_thresh);
  for (const auto& d : detections) {
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw InvalidInputError("detection confidence outside [0, 1]");
    }
  }

  std::map<std::uint32_t, std::uint64_t> gt_per_class;
  for (const auto& g : ground_truth) ++gt_per_class[g.class_id];
  if (gt_per_class.empty()) {
    throw UndefinedMetricError("mean_average_precision: no ground truth in any class");
  }

  EvalResult result;
  double ap_sum = 0.0;
  for (const auto& [cls, n_gt] : gt_per_class) {
    // Class detections in original input order (pooled tie-break contract).
    std::vector<Detection> cls_dets;
    std::vector<GroundTruthBox> cls_gts;
    for (const auto& d : detections) {
      if (d.class_id == cls) cls_dets.push_back(d);
    }
    for (const auto& g : ground_truth) {
      if (g.class_id == cls) cls_gts.push_back(g);
    }

    std::set<std::string> images;
    for (const auto& d : cls_dets) images.insert(d.image_id);
    for (const auto& g : cls_gts) images.insert(g.image_id);

    // Match per image, then pool flags over all images in global
    // confidence order; per-image matching is order-insensitive given the
    // stable per-image sort, so this merge fixes the cross-image ranking.
    std::vector<bool> is_tp(cls_dets.size(), false);
    for (const auto& img : images) {
      std::vector<Detection> img_dets;
      std::vector<std::size_t> img_indices;
      std::vector<GroundTruthBox> img_gts;
      for (std::size_t i = 0; i < cls_dets.size(); ++i) {
        if (cls_dets[i].image_id == img) {
          img_dets.push_back(cls_dets[i]);
          img_indices.push_back(i);
        }
      }
      for (const auto& g : cls_gts) {
        if (g.image_id == img) img_gts.push_back(g);
      }
      auto order = confidence_order(img_dets);
      auto flags = greedy_match(img_dets, order, img_gts, config.iou_thresh);
      for (std::size_t i = 0; i < order.size(); ++i) {
        is_tp[img_indices[order[i]]] = flags[i];
      }
    }

    auto pooled_order = confidence_order(cls_dets);
    std::vector<bool> pooled_flags;
    pooled_flags.reserve(cls_dets.size());
    for (std::size_t idx : pooled_order) pooled_flags.push_back(is_tp[idx]);

    const double ap = average_precision(pooled_flags, n_gt, config.interpolation);
    const std::uint64_t tp_count = static_cast<std::uint64_t>(
        std::count(pooled_flags.begin(), pooled_flags.end(), true));

    result.per_class_ap[cls] = ap;
    result.counts[cls] = ClassCounts{tp_count, pooled_flags.size() - tp_count, n_gt};
    ap_sum += ap;
  }

  result.map = ap_sum / static_cast<double>(gt_per_class.size());
  return result;
}

}  // namespace wxaug

#include "reference_map.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace wxaug::testing {
namespace {

// Own overlap computation so a bug in wxaug::iou cannot hide here.
double overlap_ratio(const BBox& a, const BBox& b) {
  const double x0 = std::max(a.x_min, b.x_min);
  const double y0 = std::max(a.y_min, b.y_min);
  const double x1 = std::min(a.x_max, b.x_max);
  const double y1 = std::min(a.y_max, b.y_max);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  const double inter = (x1 - x0) * (y1 - y0);
  const double area_a = (a.x_max - a.x_min) * (a.y_max - a.y_min);
  const double area_b = (b.x_max - b.x_min) * (b.y_max - b.y_min);
  return inter / (area_a + area_b - inter);
}

/// TP count when only detections with confidence >= threshold are kept,
/// matching greedily per image in confidence order.
std::size_t true_positives_at(const std::vector<Detection>& dets,
                              const std::vector<GroundTruthBox>& gts,
                              double threshold, double iou_thresh,
                              std::size_t* kept_out) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].confidence >= threshold) kept.push_back(i);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });
  *kept_out = kept.size();

  std::vector<bool> gt_used(gts.size(), false);
  std::size_t tp = 0;
  for (std::size_t di : kept) {
    double best = 0.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gt_used[g]) continue;
      if (gts[g].image_id != dets[di].image_id) continue;
      const double v = overlap_ratio(dets[di].bbox, gts[g].bbox);
      if (v >= iou_thresh && v > best) {
        best = v;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      gt_used[best_gt] = true;
      ++tp;
    }
  }
  return tp;
}

}  // namespace

double reference_class_ap(const std::vector<Detection>& detections,
                          const std::vector<GroundTruthBox>& ground_truth,
                          std::uint32_t class_id, double iou_thresh) {
  std::vector<Detection> dets;
  std::vector<GroundTruthBox> gts;
  for (const auto& d : detections) {
    if (d.class_id == class_id) dets.push_back(d);
  }
  for (const auto& g : ground_truth) {
    if (g.class_id == class_id) gts.push_back(g);
  }
  if (gts.empty()) return 0.0;
  if (dets.empty()) return 0.0;

  std::set<double, std::greater<double>> thresholds;
  for (const auto& d : dets) thresholds.insert(d.confidence);

  // One PR point per explicit threshold.
  std::vector<std::pair<double, double>> points;  // (recall, precision)
  for (double t : thresholds) {
    std::size_t kept = 0;
    const std::size_t tp = true_positives_at(dets, gts, t, iou_thresh, &kept);
    points.emplace_back(static_cast<double>(tp) / static_cast<double>(gts.size()),
                        kept > 0 ? static_cast<double>(tp) / static_cast<double>(kept) : 0.0);
  }

  // Area under the precision envelope over recall, walked right to left.
  std::sort(points.begin(), points.end());
  double ap = 0.0;
  double envelope = 0.0;
  double recall_hi = points.empty() ? 0.0 : points.back().first;
  for (std::size_t i = points.size(); i-- > 0;) {
    envelope = std::max(envelope, points[i].second);
    const double recall_lo = i == 0 ? 0.0 : points[i - 1].first;
    ap += (recall_hi - recall_lo) * envelope;
    recall_hi = recall_lo;
  }
  return ap;
}

double reference_map(const std::vector<Detection>& detections,
                     const std::vector<GroundTruthBox>& ground_truth,
                     double iou_thresh) {
  std::set<std::uint32_t> classes;
  for (const auto& g : ground_truth) classes.insert(g.class_id);
  double sum = 0.0;
  for (std::uint32_t cls : classes) {
    sum += reference_class_ap(detections, ground_truth, cls, iou_thresh);
  }
  return classes.empty() ? 0.0 : sum / static_cast<double>(classes.size());
}

}  // namespace wxaug::testing

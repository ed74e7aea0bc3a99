#include "wxaug/toyworld.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "wxaug/errors.hpp"
#include "wxaug/rng.hpp"

namespace wxaug {
namespace {

struct IntBox {
  std::int64_t x0, y0, x1, y1;  // inclusive pixel extents
};

double box_iou(const IntBox& a, const IntBox& b) {
  const double ix = static_cast<double>(std::min(a.x1, b.x1) - std::max(a.x0, b.x0) + 1);
  const double iy = static_cast<double>(std::min(a.y1, b.y1) - std::max(a.y0, b.y0) + 1);
  if (ix <= 0 || iy <= 0) return 0.0;
  const double area_a = static_cast<double>(a.x1 - a.x0 + 1) * (a.y1 - a.y0 + 1);
  const double area_b = static_cast<double>(b.x1 - b.x0 + 1) * (b.y1 - b.y0 + 1);
  const double inter = ix * iy;
  return inter / (area_a + area_b - inter);
}

bool boxes_closer_than(const IntBox& a, const IntBox& b, std::int64_t gap) {
  return a.x0 - gap <= b.x1 && b.x0 - gap <= a.x1 &&
         a.y0 - gap <= b.y1 && b.y0 - gap <= a.y1;
}

/// Width of the triangle at a given row, 0 at the apex growing to `half`
/// at the base row.
std::int64_t row_halfwidth(std::uint32_t row, std::uint32_t tri_height, std::int64_t half) {
  if (tri_height <= 1) return half;
  const double t = static_cast<double>(row) / static_cast<double>(tri_height - 1);
  return static_cast<std::int64_t>(std::floor(t * static_cast<double>(half) + 0.5));
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
  if (spec.width == 0 || spec.height == 0) {
    throw InvalidDimensionError("generate_scene: zero dimension");
  }
  if (spec.min_cone_px < 2 || spec.min_cone_px > spec.max_cone_px) {
    throw InvalidParameterError("generate_scene: need 2 <= min_cone_px <= max_cone_px");
  }
  if (spec.max_cone_px >= spec.width || spec.max_cone_px >= spec.height) {
    throw InvalidParameterError("generate_scene: cones larger than the frame");
  }

  Scene scene;
  scene.frame = new_frame(spec.width, spec.height,
                          {spec.background_gray, spec.background_gray, spec.background_gray});

  SplitMix64 rng(spec.seed);
  std::vector<IntBox> placed;
  std::vector<std::uint32_t> classes;
  const std::int64_t sep = spec.min_separation_px;

  for (std::uint32_t cone = 0; cone < spec.n_cones; ++cone) {
    const auto cls = static_cast<std::uint32_t>(rng.uniform_int(0, 1));
    const auto h = static_cast<std::uint32_t>(
        rng.uniform_int(spec.min_cone_px, spec.max_cone_px));
    const std::int64_t half = h / 2;

    bool done = false;
    for (std::uint32_t attempt = 0; attempt < spec.placement_attempts && !done; ++attempt) {
      const auto ax = static_cast<std::int64_t>(
          rng.uniform_int(static_cast<std::uint64_t>(half),
                          static_cast<std::uint64_t>(spec.width - 1 - half)));
      const auto top = static_cast<std::int64_t>(
          rng.uniform_int(0, static_cast<std::uint64_t>(spec.height - h)));
      IntBox box{ax - half, top, ax + half, top + h - 1};

      bool ok = true;
      for (const IntBox& other : placed) {
        if (box_iou(box, other) >= spec.max_overlap_iou ||
            boxes_closer_than(box, other, sep)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;

      placed.push_back(box);
      classes.push_back(cls);
      done = true;
    }
    if (!done) {
      throw PlacementError("generate_scene: could not place cone " +
                           std::to_string(cone) + " within " +
                           std::to_string(spec.placement_attempts) + " attempts");
    }
  }

  for (std::size_t i = 0; i < placed.size(); ++i) {
    const IntBox& box = placed[i];
    const auto& color = kConeColors[classes[i]];
    const auto h = static_cast<std::uint32_t>(box.y1 - box.y0 + 1);
    const std::int64_t half = (box.x1 - box.x0) / 2;
    const std::int64_t ax = box.x0 + half;
    for (std::uint32_t row = 0; row < h; ++row) {
      const std::int64_t hw = row_halfwidth(row, h, half);
      const auto y = static_cast<std::uint32_t>(box.y0 + row);
      for (std::int64_t x = ax - hw; x <= ax + hw; ++x) {
        std::size_t off = scene.frame.offset(static_cast<std::uint32_t>(x), y);
        scene.frame.pixels[off] = color[0];
        scene.frame.pixels[off + 1] = color[1];
        scene.frame.pixels[off + 2] = color[2];
      }
    }
    scene.ground_truth.push_back(GroundTruthBox{
        classes[i],
        BBox(static_cast<double>(box.x0), static_cast<double>(box.y0),
             static_cast<double>(box.x1 + 1), static_cast<double>(box.y1 + 1)),
        ""});
  }
  return scene;
}

std::vector<Detection> toy_detect(const Frame& frame, const ToyDetectorParams& params,
                                  const std::string& image_id) {
  if (frame.width == 0 || frame.height == 0 || frame.pixels.size() != frame.byte_size()) {
    throw InvalidDimensionError("toy_detect: frame invariant violated");
  }
  const std::size_t n_px = static_cast<std::size_t>(frame.width) * frame.height;

  // Background level: median luminance. The channel sum is an integer in
  // [0, 765], so a histogram gives the exact lower median cheaply.
  std::array<std::uint32_t, 766> hist{};
  const std::uint8_t* p = frame.pixels.data();
  for (std::size_t i = 0; i < n_px; ++i, p += 3) {
    hist[static_cast<std::size_t>(p[0]) + p[1] + p[2]]++;
  }
  const std::size_t median_rank = (n_px - 1) / 2;
  std::size_t cum = 0;
  int median_sum = 0;
  for (int s = 0; s <= 765; ++s) {
    cum += hist[static_cast<std::size_t>(s)];
    if (cum > median_rank) {
      median_sum = s;
      break;
    }
  }
  const double background = static_cast<double>(median_sum) / 3.0;

  // Salience mask: saturated and luminance-contrasted pixels.
  std::vector<std::uint8_t> salient(n_px, 0);
  std::vector<float> contrast(n_px, 0.0f);
  p = frame.pixels.data();
  for (std::size_t i = 0; i < n_px; ++i, p += 3) {
    const double mean = (static_cast<double>(p[0]) + p[1] + p[2]) / 3.0;
    const double excess = static_cast<double>(std::max({p[0], p[1], p[2]})) - mean;
    if (excess / 255.0 <= params.saturation_min) continue;
    const double delta = std::abs(mean - background);
    if (delta < params.contrast_min) continue;
    salient[i] = 1;
    contrast[i] = static_cast<float>(delta);
  }

  // 8-connected components over the salience mask, row-major seed order.
  std::vector<Detection> detections;
  std::vector<std::uint8_t> visited(n_px, 0);
  std::deque<std::size_t> queue;
  const auto w = static_cast<std::int64_t>(frame.width);
  const auto h = static_cast<std::int64_t>(frame.height);

  for (std::size_t seed_idx = 0; seed_idx < n_px; ++seed_idx) {
    if (!salient[seed_idx] || visited[seed_idx]) continue;

    queue.clear();
    queue.push_back(seed_idx);
    visited[seed_idx] = 1;

    std::int64_t min_x = w, max_x = -1, min_y = h, max_y = -1;
    double sum_r = 0, sum_g = 0, sum_b = 0, sum_contrast = 0;
    std::size_t area = 0;

    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      const std::int64_t x = static_cast<std::int64_t>(idx % frame.width);
      const std::int64_t y = static_cast<std::int64_t>(idx / frame.width);
      ++area;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
      const std::uint8_t* px = frame.pixels.data() + idx * 3;
      sum_r += px[0];
      sum_g += px[1];
      sum_b += px[2];
      sum_contrast += contrast[idx];

      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const std::int64_t nx = x + dx;
          const std::int64_t ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * frame.width +
                                   static_cast<std::size_t>(nx);
          if (!salient[nidx] || visited[nidx]) continue;
          visited[nidx] = 1;
          queue.push_back(nidx);
        }
      }
    }

    if (area < params.min_area) continue;

    const double mean_r = sum_r / static_cast<double>(area);
    const double mean_g = sum_g / static_cast<double>(area);
    const double mean_b = sum_b / static_cast<double>(area);
    const std::uint32_t cls = mean_b > (mean_r + mean_g) / 2.0 ? 0 : 1;
    const double confidence =
        std::clamp(sum_contrast / static_cast<double>(area) / 255.0, 0.0, 1.0);

    detections.push_back(Detection{
        cls,
        BBox(static_cast<double>(min_x), static_cast<double>(min_y),
             static_cast<double>(max_x + 1), static_cast<double>(max_y + 1)),
        confidence, image_id});
  }
  return detections;
}

}  // namespace wxaug

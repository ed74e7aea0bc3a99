#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wxaug/eval.hpp"
#include "wxaug/frame.hpp"

namespace wxaug {

/// The two cone classes rendered by the scene generator. Colors are
/// saturated and brighter than the default background so the toy detector
/// sees them through both a hue and a luminance margin.
inline constexpr std::array<std::array<std::uint8_t, 3>, 2> kConeColors = {{
    {60, 150, 255},   // class 0: blue
    {255, 230, 0},    // class 1: yellow
}};
inline constexpr std::array<const char*, 2> kConeClassNames = {"cone_blue", "cone_yellow"};

/// Parameters of one synthetic cone scene. Cones are filled triangles in
/// the two class colors on a flat gray background, fully inside the frame,
/// with pairwise box IoU below max_overlap_iou and at least
/// min_separation_px of clearance so clean scenes never merge components.
struct SceneSpec {
  std::uint32_t width = kBenchFrameWidth;
  std::uint32_t height = kBenchFrameHeight;
  std::uint32_t n_cones = 10;
  std::uint32_t min_cone_px = 24;  // triangle height range, pixels
  std::uint32_t max_cone_px = 48;
  std::uint8_t background_gray = 120;
  double max_overlap_iou = 0.1;
  std::uint32_t min_separation_px = 2;
  std::uint32_t placement_attempts = 100;  // per cone
  std::uint64_t seed = 0;
};

struct Scene {
  Frame frame;
  std::vector<GroundTruthBox> ground_truth;
};

/// Renders the scene and returns tight ground-truth boxes. Deterministic
/// in spec.seed: per cone the draws are class, height, then (apex_x, top)
/// pairs until placement succeeds. Throws PlacementError when a cone
/// cannot be placed within the attempt budget, InvalidParameterError /
/// InvalidDimensionError on unusable specs.
Scene generate_scene(const SceneSpec& spec);

/// Knobs of the deliberately brittle contrast detector. Defaults are
/// calibrated so a clean generated scene scores mAP 1.0 and nothing more:
/// the detector is not meant to survive augmentation.
struct ToyDetectorParams {
  double saturation_min = 0.25;  // (max channel - channel mean) / 255 must exceed this
  double contrast_min = 20.0;    // |luminance - background| in 8-bit levels
  std::uint32_t min_area = 50;   // component pixel count
};

/// Connected components (8-connectivity) of pixels that are both
/// saturated (dominant-channel excess over the channel mean above
/// saturation_min) and contrasted (luminance at least contrast_min away
/// from the background level, estimated as the median frame luminance).
/// Components with >= min_area pixels become detections: class from the
/// dominant hue, confidence = mean contrast / 255 clamped to [0, 1],
/// bbox = tight pixel extent. Detections are emitted in row-major
/// discovery order.
std::vector<Detection> toy_detect(const Frame& frame,
                                  const ToyDetectorParams& params = {},
                                  const std::string& image_id = "");

}  // namespace wxaug

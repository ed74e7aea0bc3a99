#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wxaug/frame.hpp"
#include "wxaug/rng.hpp"

namespace wxaug {

/// Light dimming. k_dim = 1 leaves the frame untouched, 0 is black.
/// Every channel becomes round_half_up(c * k_dim).
struct DimConfig {
  double k_dim = 1.0;

  friend bool operator==(const DimConfig&, const DimConfig&) = default;
};

/// Adherent droplets: translucent gray discs stuck to the lens.
/// k_droplet is the single swept control (global alpha scale); the
/// remaining knobs shape the field and stay fixed during calibration.
struct DropletConfig {
  double k_droplet = 0.0;     // global alpha scale in [0, 1]
  double fog_coef = 0.4;      // disc base-size coefficient in (0, 1]
  double density = 80.0;      // discs per megapixel
  double radius_jitter = 0.5; // radius spread as a fraction of the base radius
  std::uint8_t gray_low = 160;
  std::uint8_t gray_high = 220;

  friend bool operator==(const DropletConfig&, const DropletConfig&) = default;
};

struct Disc {
  double cx = 0;
  double cy = 0;
  double radius = 1;
  double alpha = 0;
  std::uint8_t gray = 0;

  friend bool operator==(const Disc&, const Disc&) = default;
};

/// One concrete realization of a droplet augmentation: the discs that a
/// given (dims, config, seed) triple always produces, element for element.
struct DropletField {
  std::vector<Disc> discs;
  std::uint64_t source_seed = 0;
  std::uint32_t source_width = 0;
  std::uint32_t source_height = 0;

  friend bool operator==(const DropletField&, const DropletField&) = default;
};

using StageConfig = std::variant<DimConfig, DropletConfig>;

/// Ordered, seeded composition of stages. An empty chain is the identity.
struct AugmentationChain {
  std::vector<StageConfig> stages;
  std::uint64_t seed = 0;
};

/// Throws InvalidParameterError unless all knobs are in range.
void validate(const DimConfig& cfg);
void validate(const DropletConfig& cfg);

/// c' = round_half_up(c * k_dim) on every channel. Bit-identity at k = 1.
Frame apply_dimming(const Frame& frame, const DimConfig& cfg);

/// Draws the disc set for one frame. Derived quantities:
///   base radius r0 = max(round(fog_coef * min(w, h) / 10), 2)
///   disc count  N  = round(density * w * h / 1e6)
/// Per disc, draw order is fixed: cx, cy, radius, u, gray, with
///   cx ~ U[0, w), cy ~ U[0, h),
///   radius ~ U[(1 - jitter) r0, (1 + jitter) r0] clamped to >= 1,
///   alpha = k_droplet * u where u ~ U(0.5, 1.0),
///   gray ~ U{gray_low, ..., gray_high}.
/// All draws come from SplitMix64 seeded with `seed` (see rng.hpp).
DropletField sample_droplet_field(std::uint32_t width, std::uint32_t height,
                                  const DropletConfig& cfg, std::uint64_t seed);

/// Composites the field onto the frame. For each disc in list order, each
/// pixel whose center lies inside the disc becomes
///   c' = round_half_up((1 - alpha) * c + alpha * gray),
/// intermediate rounding included, so overlapping discs blend
/// sequentially. Pixels outside all discs are untouched; no blur.
/// Throws FieldMismatchError when field dims differ from the frame's.
Frame apply_droplets(const Frame& frame, const DropletField& field);

/// Per-frame seed for a droplet stage inside a chain. Same frame_id, same
/// discs; successive frame_ids give fresh fields.
constexpr std::uint64_t stage_seed(std::uint64_t chain_seed, std::uint64_t frame_id,
                                   std::size_t stage_index) noexcept {
  return hash_combine(hash_combine(chain_seed, frame_id),
                      static_cast<std::uint64_t>(stage_index));
}

/// Applies every stage in listed order. Pure: byte-identical output for
/// identical (frame, chain). frame_id and timestamp carry through.
Frame apply_chain(const Frame& frame, const AugmentationChain& chain);

/// Wall-clock order statistics, microseconds.
struct LatencyStats {
  double p50_us = 0;
  double p95_us = 0;
  double max_us = 0;
};

/// Nearest-rank percentiles of a sample set, microseconds.
LatencyStats latency_stats_from_us(std::vector<double> samples_us);

/// Runs the stage chain n_frames times over pre-generated randomized
/// frames of the given size, timing each call (droplet stages resample
/// their field per frame, so sampling cost is included). Only the stage
/// application is timed, not frame generation.
/// Throws InvalidParameterError when n_frames == 0.
LatencyStats measure_latency(const AugmentationChain& stage, std::uint32_t width,
                             std::uint32_t height, std::uint32_t n_frames,
                             std::uint64_t seed = 0x77F0);

/// Chain configuration JSON:
///   {"seed": u64, "stages": [{"type": "dim", "k_dim": f},
///                            {"type": "droplets", "k_droplet": f, ...}]}
/// "seed" defaults to 0; droplet knobs beyond k_droplet default as in
/// DropletConfig. Unknown keys are rejected (ParseError).
AugmentationChain parse_chain_json(const std::string& text);
std::string chain_to_json(const AugmentationChain& chain);
AugmentationChain load_chain_file(const std::string& path);

}  // namespace wxaug

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace wxaug {

/// Default bench resolution for latency measurements.
inline constexpr std::uint32_t kBenchFrameWidth = 672;
inline constexpr std::uint32_t kBenchFrameHeight = 376;

/// Resolution the reference perception stack consumes. Recorded for
/// documentation; no kernel in this library depends on it.
inline constexpr std::uint32_t kDetectorFeedWidth = 608;
inline constexpr std::uint32_t kDetectorFeedHeight = 352;

/// Owned, interleaved RGB8 raster. The one image type every stage of the
/// pipeline consumes and produces; conversions from other layouts happen
/// at the boundary. Plain value: safe to move between threads.
///
/// Invariant: pixels.size() == std::size_t(width) * height * 3 and
/// width, height >= 1. Enforced by the constructing functions (new_frame,
/// decode_ppm, read_wire_frame); Frame itself is a dumb value.
struct Frame {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;
  std::uint64_t frame_id = 0;
  std::optional<std::int64_t> timestamp_us;

  std::size_t byte_size() const noexcept {
    return static_cast<std::size_t>(width) * height * 3;
  }

  /// Offset of pixel (x, y) in the buffer; no bounds check.
  std::size_t offset(std::uint32_t x, std::uint32_t y) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * 3;
  }

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Builds a solid-color frame with frame_id 0.
/// Throws InvalidDimensionError when either dimension is zero.
Frame new_frame(std::uint32_t width, std::uint32_t height,
                std::array<std::uint8_t, 3> fill = {0, 0, 0});

}  // namespace wxaug

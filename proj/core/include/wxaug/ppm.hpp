#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wxaug/frame.hpp"

namespace wxaug {

/// Encodes a frame as binary PPM (P6), maxval 255. The header is emitted
/// canonically as "P6\n<w> <h>\n255\n" so encode/decode round-trips are
/// byte identities.
std::vector<std::uint8_t> encode_ppm(const Frame& frame);

/// Decodes a binary PPM (P6, maxval 255). Any run of ASCII whitespace is
/// accepted between header tokens; exactly one whitespace byte separates
/// the maxval from the payload. Never reads past the declared payload.
///
/// Throws MagicError (not "P6"), MaxvalError (maxval != 255),
/// TruncatedError (payload or header cut short), ParseError (malformed
/// header), InvalidDimensionError (zero width/height).
Frame decode_ppm(std::span<const std::uint8_t> bytes);

Frame load_ppm(const std::filesystem::path& path);
void save_ppm(const Frame& frame, const std::filesystem::path& path);

}  // namespace wxaug

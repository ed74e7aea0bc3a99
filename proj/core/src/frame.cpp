#include "wxaug/frame.hpp"

#include <string>

#include "wxaug/errors.hpp"

namespace wxaug {

Frame new_frame(std::uint32_t width, std::uint32_t height,
                std::array<std::uint8_t, 3> fill) {
  if (width == 0 || height == 0) {
    throw InvalidDimensionError("frame dimensions must be >= 1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  Frame f;
  f.width = width;
  f.height = height;
  f.pixels.resize(f.byte_size());
  for (std::size_t i = 0; i < f.pixels.size(); i += 3) {
    f.pixels[i] = fill[0];
    f.pixels[i + 1] = fill[1];
    f.pixels[i + 2] = fill[2];
  }
  return f;
}

}  // namespace wxaug

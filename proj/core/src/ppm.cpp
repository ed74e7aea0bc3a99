#include "wxaug/ppm.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "wxaug/errors.hpp"

namespace wxaug {
namespace {

bool is_ppm_ws(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }

  void skip_ws_run(const char* what) {
    if (eof()) throw TruncatedError(std::string("ppm: input ends before ") + what);
    if (!is_ppm_ws(peek())) {
      throw ParseError(std::string("ppm: expected whitespace before ") + what);
    }
    while (!eof() && is_ppm_ws(peek())) ++pos;
  }

  std::uint64_t parse_uint(const char* what) {
    if (eof()) throw TruncatedError(std::string("ppm: input ends before ") + what);
    if (peek() < '0' || peek() > '9') {
      throw ParseError(std::string("ppm: expected digit in ") + what);
    }
    std::uint64_t value = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 0xFFFFFFFFULL) throw ParseError(std::string("ppm: ") + what + " overflows");
      ++pos;
    }
    return value;
  }
};

}  // namespace

std::vector<std::uint8_t> encode_ppm(const Frame& frame) {
  char header[64];
  int n = std::snprintf(header, sizeof(header), "P6\n%u %u\n255\n", frame.width,
                        frame.height);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(n) + frame.pixels.size());
  out.insert(out.end(), header, header + n);
  out.insert(out.end(), frame.pixels.begin(), frame.pixels.end());
  return out;
}

Frame decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw TruncatedError("ppm: input shorter than magic");
  if (bytes[0] != 'P' || bytes[1] != '6') {
    throw MagicError("ppm: magic is not P6");
  }
  Cursor cur{bytes, 2};
  cur.skip_ws_run("width");
  std::uint64_t width = cur.parse_uint("width");
  cur.skip_ws_run("height");
  std::uint64_t height = cur.parse_uint("height");
  cur.skip_ws_run("maxval");
  std::uint64_t maxval = cur.parse_uint("maxval");
  if (maxval != 255) {
    throw MaxvalError("ppm: maxval must be 255, got " + std::to_string(maxval));
  }
  // Exactly one whitespace byte, then the raw payload.
  if (cur.eof()) throw TruncatedError("ppm: input ends before payload");
  if (!is_ppm_ws(cur.peek())) throw ParseError("ppm: expected whitespace after maxval");
  ++cur.pos;

  if (width == 0 || height == 0) {
    throw InvalidDimensionError("ppm: zero width or height");
  }
  // Keeps width * height * 3 well inside 64 bits.
  if (width > (1ULL << 24) || height > (1ULL << 24)) {
    throw ParseError("ppm: dimensions beyond supported range");
  }
  std::uint64_t payload = width * height * 3ULL;
  if (bytes.size() - cur.pos < payload) {
    throw TruncatedError("ppm: payload truncated, need " + std::to_string(payload) +
                         " bytes, have " + std::to_string(bytes.size() - cur.pos));
  }

  Frame f;
  f.width = static_cast<std::uint32_t>(width);
  f.height = static_cast<std::uint32_t>(height);
  f.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos),
                  bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos + payload));
  return f;
}

Frame load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

void save_ppm(const Frame& frame, const std::filesystem::path& path) {
  auto bytes = encode_ppm(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace wxaug

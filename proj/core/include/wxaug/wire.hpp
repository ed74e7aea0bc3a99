#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wxaug/augment.hpp"
#include "wxaug/frame.hpp"

namespace wxaug {

/// Wire frame layout, all integers little-endian:
///   magic "WXA1" | width u32 | height u32 | frame_id u64 | w*h*3 raw RGB
/// On any protocol violation the peer receives the 4-byte sentinel "WXE1"
/// and the stream closes.
inline constexpr std::array<std::uint8_t, 4> kWireMagic = {'W', 'X', 'A', '1'};
inline constexpr std::array<std::uint8_t, 4> kWireErrorSentinel = {'W', 'X', 'E', '1'};
inline constexpr std::size_t kWireHeaderSize = 20;
inline constexpr std::uint32_t kWireMaxSide = 1u << 14;

/// Minimal blocking byte transport so the protocol logic is testable
/// in memory and deployable over stdio or TCP unchanged.
class ByteStream {
public:
  virtual ~ByteStream() = default;

  /// Reads up to out.size() bytes; returns 0 only at end of stream.
  virtual std::size_t read_some(std::span<std::uint8_t> out) = 0;

  /// Writes the whole buffer or throws IoError.
  virtual void write_all(std::span<const std::uint8_t> data) = 0;
};

/// In-memory transport for tests: reads from `input`, appends to `output`.
class MemoryStream final : public ByteStream {
public:
  explicit MemoryStream(std::vector<std::uint8_t> input = {})
      : input_(std::move(input)) {}

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(std::span<const std::uint8_t> data) override;

  const std::vector<std::uint8_t>& output() const noexcept { return output_; }

private:
  std::vector<std::uint8_t> input_;
  std::size_t cursor_ = 0;
  std::vector<std::uint8_t> output_;
};

/// Transport over POSIX file descriptors (stdio: 0/1). Does not own them.
class FdStream final : public ByteStream {
public:
  FdStream(int read_fd, int write_fd) : read_fd_(read_fd), write_fd_(write_fd) {}

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(std::span<const std::uint8_t> data) override;

private:
  int read_fd_;
  int write_fd_;
};

std::vector<std::uint8_t> encode_wire_frame(const Frame& frame);

/// Reads one frame; std::nullopt at a clean end of stream (EOF exactly at
/// a frame boundary). Throws MagicError, OversizedError (side > 2^14 or
/// zero) or TruncatedError on protocol violations.
std::optional<Frame> read_wire_frame(ByteStream& in);

struct StreamReport {
  std::uint64_t frames = 0;
  LatencyStats latency;        // per-frame processing latency
  bool protocol_error = false; // sentinel was emitted and the stream closed
};

/// Pumps frames from `in` to `out` until EOF, applying the chain to each
/// (droplet stages reseed per frame_id). Headers are echoed verbatim and
/// frames stay in arrival order. On a malformed input frame the sentinel
/// is written and serving stops.
StreamReport serve_stream(ByteStream& in, ByteStream& out, const AugmentationChain& chain);

/// serve_stream over this process's stdin/stdout.
StreamReport serve_stdio(const AugmentationChain& chain);

/// Listens on the port, serves exactly one connection to completion, then
/// returns (one stream, one worker).
StreamReport serve_tcp(std::uint16_t port, const AugmentationChain& chain);

}  // namespace wxaug

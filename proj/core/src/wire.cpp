#include "wxaug/wire.hpp"

#include <arpa/inet.h>
#include <csignal>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <string>

#include "wxaug/errors.hpp"

namespace wxaug {
namespace {

void store_u32le(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void store_u64le(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

/// Fills the buffer completely; returns false on immediate EOF, throws
/// TruncatedError when the stream dies mid-record.
bool read_exact(ByteStream& in, std::span<std::uint8_t> buf, bool allow_eof_at_start) {
  std::size_t got = 0;
  while (got < buf.size()) {
    std::size_t n = in.read_some(buf.subspan(got));
    if (n == 0) {
      if (got == 0 && allow_eof_at_start) return false;
      throw TruncatedError("wire: stream ended inside a frame (" + std::to_string(got) +
                           " of " + std::to_string(buf.size()) + " bytes)");
    }
    got += n;
  }
  return true;
}

}  // namespace

std::size_t MemoryStream::read_some(std::span<std::uint8_t> out) {
  const std::size_t n = std::min(out.size(), input_.size() - cursor_);
  std::memcpy(out.data(), input_.data() + cursor_, n);
  cursor_ += n;
  return n;
}

void MemoryStream::write_all(std::span<const std::uint8_t> data) {
  output_.insert(output_.end(), data.begin(), data.end());
}

std::size_t FdStream::read_some(std::span<std::uint8_t> out) {
  for (;;) {
    const ssize_t n = ::read(read_fd_, out.data(), out.size());
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno != EINTR) throw IoError(std::string("read failed: ") + std::strerror(errno));
  }
}

void FdStream::write_all(std::span<const std::uint8_t> data) {
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(write_fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("write failed: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::vector<std::uint8_t> encode_wire_frame(const Frame& frame) {
  std::vector<std::uint8_t> out(kWireHeaderSize + frame.pixels.size());
  std::memcpy(out.data(), kWireMagic.data(), kWireMagic.size());
  store_u32le(out.data() + 4, frame.width);
  store_u32le(out.data() + 8, frame.height);
  store_u64le(out.data() + 12, frame.frame_id);
  std::memcpy(out.data() + kWireHeaderSize, frame.pixels.data(), frame.pixels.size());
  return out;
}

std::optional<Frame> read_wire_frame(ByteStream& in) {
  std::array<std::uint8_t, kWireHeaderSize> header;
  if (!read_exact(in, header, /*allow_eof_at_start=*/true)) return std::nullopt;
  if (!std::equal(kWireMagic.begin(), kWireMagic.end(), header.begin())) {
    throw MagicError("wire: bad frame magic");
  }
  const std::uint32_t width = get_u32le(header.data() + 4);
  const std::uint32_t height = get_u32le(header.data() + 8);
  const std::uint64_t frame_id = get_u64le(header.data() + 12);
  if (width == 0 || height == 0 || width > kWireMaxSide || height > kWireMaxSide) {
    throw OversizedError("wire: rejected dimensions " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  Frame f;
  f.width = width;
  f.height = height;
  f.frame_id = frame_id;
  f.pixels.resize(f.byte_size());
  read_exact(in, f.pixels, /*allow_eof_at_start=*/false);
  return f;
}

StreamReport serve_stream(ByteStream& in, ByteStream& out, const AugmentationChain& chain) {
  StreamReport report;
  std::vector<double> latencies_us;
  using clock = std::chrono::steady_clock;

  for (;;) {
    std::optional<Frame> frame;
    try {
      frame = read_wire_frame(in);
    } catch (const ParseError&) {
      out.write_all(kWireErrorSentinel);
      report.protocol_error = true;
      break;
    }
    if (!frame) break;  // clean EOF

    const auto t0 = clock::now();
    Frame augmented = apply_chain(*frame, chain);
    out.write_all(encode_wire_frame(augmented));
    const auto t1 = clock::now();
    latencies_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    ++report.frames;
  }
  report.latency = latency_stats_from_us(std::move(latencies_us));
  return report;
}

StreamReport serve_stdio(const AugmentationChain& chain) {
  // A peer hanging up mid-frame should surface as IoError, not SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
  FdStream io(STDIN_FILENO, STDOUT_FILENO);
  return serve_stream(io, io, chain);
}

StreamReport serve_tcp(std::uint16_t port, const AugmentationChain& chain) {
  ::signal(SIGPIPE, SIG_IGN);
  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) throw IoError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listener);
    throw IoError("bind to port " + std::to_string(port) + ": " + why);
  }
  if (::listen(listener, 1) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listener);
    throw IoError("listen: " + why);
  }
  const int client = ::accept(listener, nullptr, nullptr);
  ::close(listener);
  if (client < 0) throw IoError(std::string("accept: ") + std::strerror(errno));

  FdStream io(client, client);
  StreamReport report;
  try {
    report = serve_stream(io, io, chain);
  } catch (...) {
    ::close(client);
    throw;
  }
  ::close(client);
  return report;
}

}  // namespace wxaug

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wxaug/dataset.hpp"
#include "wxaug/eval.hpp"
#include "wxaug/frame.hpp"
#include "wxaug/toyworld.hpp"

namespace wxaug {

struct NamedFrame {
  std::string image_id;
  Frame frame;
};

/// Anything that turns frames into detections: the built-in toy detector
/// or an external process wrapped behind a command template.
class DetectorAdapter {
public:
  virtual ~DetectorAdapter() = default;

  /// Runs detection over a batch of frames. Detections carry the input
  /// image_ids unchanged.
  virtual std::vector<Detection> run_batch(const std::vector<NamedFrame>& frames) = 0;

  /// Whether concurrent run_batch calls from different threads are safe.
  virtual bool concurrent_safe() const noexcept { return false; }

  virtual std::string name() const = 0;
};

/// In-process adapter around toy_detect. Pure, hence concurrency-safe.
class ToyDetector final : public DetectorAdapter {
public:
  explicit ToyDetector(ToyDetectorParams params = {}) : params_(params) {}

  std::vector<Detection> run_batch(const std::vector<NamedFrame>& frames) override;
  bool concurrent_safe() const noexcept override { return true; }
  std::string name() const override { return "toy"; }

private:
  ToyDetectorParams params_;
};

enum class DetectorMode { kPerImage, kBatch };

/// External detector behind a process boundary. Frames are written as PPM
/// files named `<image_id>.ppm` in a temporary directory; the command is
/// a shell template where `{input}` expands to the PPM path (per-image
/// mode) or to a text file listing one PPM path per line (batch mode),
/// and `{image_id}` expands to the id in per-image mode. Without an
/// `{input}` placeholder the path is appended as a final argument. The
/// command must print Detection JSONL on stdout.
struct ProcessDetectorConfig {
  std::string command_template;
  DetectorMode mode = DetectorMode::kPerImage;
};

class ProcessDetector final : public DetectorAdapter {
public:
  explicit ProcessDetector(ProcessDetectorConfig config) : config_(std::move(config)) {}

  /// Throws DetectorError (with captured stderr) on nonzero exit,
  /// ParseError (with line number) on malformed output.
  std::vector<Detection> run_batch(const std::vector<NamedFrame>& frames) override;
  std::string name() const override { return "process"; }

private:
  ProcessDetectorConfig config_;
};

/// Convenience wrapper matching the adapter contract in one call.
std::vector<Detection> run_external_detector(const ProcessDetectorConfig& config,
                                             const std::vector<NamedFrame>& frames);

}  // namespace wxaug

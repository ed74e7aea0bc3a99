#include "wxaug/detector.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "wxaug/errors.hpp"
#include "wxaug/eval_io.hpp"
#include "wxaug/ppm.hpp"

namespace wxaug {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "wxaug-det-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw IoError("mkdtemp failed for " + tmpl);
    }
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }

private:
  fs::path path_;
};

std::string read_file_or_empty(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = tmpl.find(key, pos)) != std::string::npos) {
    tmpl.replace(pos, key.size(), value);
    pos += value.size();
  }
  return tmpl;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += "'";
  return out;
}

/// Runs one shell command, returning its stdout; throws DetectorError on
/// nonzero exit with stderr attached.
std::string run_command(const std::string& command, const fs::path& workdir) {
  const fs::path out_path = workdir / "stdout.txt";
  const fs::path err_path = workdir / "stderr.txt";
  // Subshell so the redirections cover the whole template, not just its
  // last command.
  const std::string full = "( " + command + " ) > " + shell_quote(out_path.string()) +
                           " 2> " + shell_quote(err_path.string()) + " < /dev/null";
  const int rc = std::system(full.c_str());
  if (rc == -1) throw IoError("failed to spawn detector command");
  if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
    const int status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::string stderr_text = read_file_or_empty(err_path);
    if (stderr_text.size() > 4096) stderr_text.resize(4096);
    throw DetectorError("detector command exited with status " + std::to_string(status) +
                            ": " + command,
                        std::move(stderr_text));
  }
  return read_file_or_empty(out_path);
}

void check_id(const std::string& id) {
  if (id.empty() || id.find('/') != std::string::npos) {
    throw InvalidInputError("image_id unusable as a filename: \"" + id + "\"");
  }
}

}  // namespace

std::vector<Detection> ToyDetector::run_batch(const std::vector<NamedFrame>& frames) {
  std::vector<Detection> out;
  for (const auto& nf : frames) {
    auto dets = toy_detect(nf.frame, params_, nf.image_id);
    out.insert(out.end(), dets.begin(), dets.end());
  }
  return out;
}

std::vector<Detection> ProcessDetector::run_batch(const std::vector<NamedFrame>& frames) {
  TempDir tmp;

  std::vector<fs::path> ppm_paths;
  ppm_paths.reserve(frames.size());
  std::set<std::string> input_ids;
  for (const auto& nf : frames) {
    check_id(nf.image_id);
    fs::path ppm = tmp.path() / (nf.image_id + ".ppm");
    save_ppm(nf.frame, ppm);
    ppm_paths.push_back(std::move(ppm));
    input_ids.insert(nf.image_id);
  }

  auto expand = [&](const std::string& input_path, const std::string& image_id) {
    std::string cmd = config_.command_template;
    if (cmd.find("{input}") == std::string::npos) {
      cmd += " " + shell_quote(input_path);
    } else {
      cmd = substitute(cmd, "{input}", shell_quote(input_path));
    }
    cmd = substitute(cmd, "{image_id}", shell_quote(image_id));
    return cmd;
  };

  std::vector<Detection> all;
  if (config_.mode == DetectorMode::kPerImage) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::string& id = frames[i].image_id;
      std::string stdout_text = run_command(expand(ppm_paths[i].string(), id), tmp.path());
      auto dets = parse_detections_jsonl(stdout_text);
      for (const auto& d : dets) {
        if (d.image_id != id) {
          throw ParseError("detector returned image_id \"" + d.image_id +
                           "\" while processing \"" + id + "\"");
        }
      }
      all.insert(all.end(), dets.begin(), dets.end());
    }
  } else {
    const fs::path list_path = tmp.path() / "images.txt";
    {
      std::ofstream list(list_path, std::ios::trunc);
      for (const auto& p : ppm_paths) list << p.string() << "\n";
      if (!list) throw IoError("cannot write " + list_path.string());
    }
    std::string stdout_text = run_command(expand(list_path.string(), ""), tmp.path());
    all = parse_detections_jsonl(stdout_text);
    for (const auto& d : all) {
      if (!input_ids.count(d.image_id)) {
        throw ParseError("detector returned unknown image_id \"" + d.image_id + "\"");
      }
    }
  }
  return all;
}

std::vector<Detection> run_external_detector(const ProcessDetectorConfig& config,
                                             const std::vector<NamedFrame>& frames) {
  ProcessDetector detector(config);
  return detector.run_batch(frames);
}

}  // namespace wxaug

// wxaug — weather-degradation pipeline CLI.
//
// Subcommands: augment, stream, eval, sweep, invert, bench,
// toyworld generate, toyworld detect.
// Exit codes: 0 success, 1 usage, 2 data/parse error, 3 detector failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wxaug/augment.hpp"
#include "wxaug/calibrate.hpp"
#include "wxaug/detector.hpp"
#include "wxaug/errors.hpp"
#include "wxaug/eval_io.hpp"
#include "wxaug/manifest.hpp"
#include "wxaug/ppm.hpp"
#include "wxaug/rng.hpp"
#include "wxaug/toyworld.hpp"
#include "wxaug/wire.hpp"

namespace fs = std::filesystem;
using namespace wxaug;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDetector = 3;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  unsigned jobs = 1;
};

AugmentationChain resolve_chain(const GlobalOptions& global) {
  AugmentationChain chain;  // empty chain = identity
  if (!global.config_path.empty()) chain = load_chain_file(global.config_path);
  if (global.seed) chain.seed = *global.seed;
  return chain;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("short write to " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

/// Runs fn(i) for i in [0, n) on `jobs` threads; outputs are the caller's
/// responsibility (indexed slots keep results deterministic).
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// -- subcommand state ---------------------------------------------------------

struct AugmentArgs {
  std::string manifest;
  std::string out_dir;
};

struct StreamArgs {
  std::string transport = "stdio";
  std::uint16_t port = 0;
};

struct EvalArgs {
  std::string manifest;
  std::string detections;
  double iou_thresh = 0.5;
  std::string interp = "all";
  std::string out;
};

struct SweepArgs {
  std::string manifest;
  std::string stage;
  std::string grid;
  std::uint32_t repeats = 5;
  std::string detector = "toy";
  std::string detector_cmd;
  std::string detector_mode = "per-image";
  double fog_coef = DropletConfig{}.fog_coef;
  double density = DropletConfig{}.density;
  double radius_jitter = DropletConfig{}.radius_jitter;
  std::uint32_t gray_low = DropletConfig{}.gray_low;
  std::uint32_t gray_high = DropletConfig{}.gray_high;
  double iou_thresh = 0.5;
  std::string out_csv;
  std::string out_log;
};

struct InvertArgs {
  std::string curve;
  std::string stage;
  std::optional<double> target_map;
  bool severity = false;
  std::string condition;
  std::string out;
};

struct BenchArgs {
  std::string size = "672x376";
  std::uint32_t frames = 300;
  double k_dim = 0.5;
  double k_droplet = 0.5;
};

struct ToyGenerateArgs {
  std::string out_dir;
  std::uint32_t scenes = 20;
  std::uint32_t width = kBenchFrameWidth;
  std::uint32_t height = kBenchFrameHeight;
  std::uint32_t cones = 10;
  std::uint32_t min_size = 24;
  std::uint32_t max_size = 48;
  std::uint32_t background = 120;
};

struct ToyDetectArgs {
  std::vector<std::string> ppms;
  std::string manifest;
  double saturation_min = ToyDetectorParams{}.saturation_min;
  double contrast_min = ToyDetectorParams{}.contrast_min;
  std::uint32_t min_area = ToyDetectorParams{}.min_area;
};

// -- subcommand implementations -------------------------------------------------

int cmd_augment_run(const GlobalOptions& global, const AugmentArgs& args) {
  const AugmentationChain chain = resolve_chain(global);
  const DatasetManifest manifest = load_manifest(args.manifest);
  fs::create_directories(args.out_dir);

  parallel_for(manifest.entries.size(), global.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    Frame frame = load_ppm(manifest.root / entry.image_file);
    frame.frame_id = i;  // position in the manifest, the documented contract
    Frame augmented = apply_chain(frame, chain);
    save_ppm(augmented, fs::path(args.out_dir) / entry.image_file);
    fs::copy_file(manifest.root / entry.gt_file, fs::path(args.out_dir) / entry.gt_file,
                  fs::copy_options::overwrite_existing);
  });

  DatasetManifest out_manifest = manifest;
  out_manifest.root = args.out_dir;
  save_manifest(out_manifest, fs::path(args.out_dir) / "manifest.json");
  std::cerr << "augmented " << manifest.entries.size() << " images into " << args.out_dir
            << "\n";
  return kExitOk;
}

int cmd_stream_run(const GlobalOptions& global, const StreamArgs& args) {
  const AugmentationChain chain = resolve_chain(global);
  StreamReport report;
  if (args.transport == "stdio") {
    report = serve_stdio(chain);
  } else {
    if (args.port == 0) throw InvalidInputError("tcp transport requires --port");
    report = serve_tcp(args.port, chain);
  }
  std::fprintf(stderr,
               "stream done: %llu frames, latency p50 %.1f us, p95 %.1f us, max %.1f us%s\n",
               static_cast<unsigned long long>(report.frames), report.latency.p50_us,
               report.latency.p95_us, report.latency.max_us,
               report.protocol_error ? " (protocol error, sentinel sent)" : "");
  return report.protocol_error ? kExitData : kExitOk;
}

int cmd_eval_run(const GlobalOptions&, const EvalArgs& args) {
  const DatasetManifest manifest = load_manifest(args.manifest);
  std::vector<GroundTruthBox> ground_truth;
  for (const auto& entry : manifest.entries) {
    auto boxes = load_yolo_gt(manifest.root / entry.gt_file, entry.image_id, entry.width,
                              entry.height);
    ground_truth.insert(ground_truth.end(), boxes.begin(), boxes.end());
  }
  const auto detections = load_detections_jsonl(args.detections);

  EvalConfig config;
  config.iou_thresh = args.iou_thresh;
  config.interpolation =
      args.interp == "11" ? ApInterpolation::kElevenPoint : ApInterpolation::kAllPoint;
  const EvalResult result = mean_average_precision(detections, ground_truth, config);
  emit(eval_result_to_json(result, config), args.out);
  return kExitOk;
}

std::vector<double> parse_grid(const std::string& csv) {
  if (csv.empty()) return default_sweep_grid();
  std::vector<double> grid;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidInputError("bad grid value \"" + item + "\"");
    }
  }
  return grid;
}

int cmd_sweep_run(const GlobalOptions& global, const SweepArgs& args) {
  const DatasetManifest manifest = load_manifest(args.manifest);
  const Dataset dataset = load_dataset(manifest);

  SweepOptions opts;
  opts.stage = args.stage == "dim" ? StageKind::kDim : StageKind::kDroplets;
  opts.grid = parse_grid(args.grid);
  opts.repeats = args.repeats;
  opts.base_seed = global.seed.value_or(0);
  opts.jobs = global.jobs;
  opts.droplet_cfg.fog_coef = args.fog_coef;
  opts.droplet_cfg.density = args.density;
  opts.droplet_cfg.radius_jitter = args.radius_jitter;
  opts.droplet_cfg.gray_low = static_cast<std::uint8_t>(args.gray_low);
  opts.droplet_cfg.gray_high = static_cast<std::uint8_t>(args.gray_high);

  std::unique_ptr<DetectorAdapter> detector;
  if (args.detector == "toy") {
    detector = std::make_unique<ToyDetector>();
  } else {
    if (args.detector_cmd.empty()) {
      throw InvalidInputError("--detector command requires --detector-cmd");
    }
    ProcessDetectorConfig cfg;
    cfg.command_template = args.detector_cmd;
    cfg.mode =
        args.detector_mode == "batch" ? DetectorMode::kBatch : DetectorMode::kPerImage;
    detector = std::make_unique<ProcessDetector>(cfg);
  }

  EvalConfig eval_config;
  eval_config.iou_thresh = args.iou_thresh;
  const SweepResult result = run_sweep(dataset, *detector, opts, eval_config);

  write_text_file(args.out_csv, curve_to_csv(result.curve));
  if (!args.out_log.empty()) write_text_file(args.out_log, runs_to_jsonl(result.runs));
  std::fprintf(stderr, "sweep done: %zu points x %u repeats, baseline mAP %.6f -> %s\n",
               result.curve.points.size(), args.repeats, result.curve.baseline_map,
               args.out_csv.c_str());
  return kExitOk;
}

int cmd_invert_run(const GlobalOptions&, const InvertArgs& args) {
  Condition condition = Condition::kDroplets;
  StageKind kind;
  if (args.severity) {
    if (args.condition != "droplets" && args.condition != "low_light") {
      throw InvalidInputError("--severity requires --condition droplets|low_light");
    }
    condition = args.condition == "droplets" ? Condition::kDroplets : Condition::kLowLight;
    kind = stage_for(condition);
  } else {
    if (!args.target_map) {
      throw InvalidInputError("provide --target-map or --severity");
    }
    if (args.stage != "dim" && args.stage != "droplets") {
      throw InvalidInputError("--target-map requires --stage dim|droplets");
    }
    kind = args.stage == "dim" ? StageKind::kDim : StageKind::kDroplets;
  }

  CalibrationCurve curve = curve_from_csv(read_text_file(args.curve), kind);
  curve = fit_monotone(curve);

  if (args.severity) {
    const auto rows = build_severity_mapping(curve, builtin_severity_table(), condition);
    for (const MappingRow& row : rows) {
      if (row.clamped) {
        std::fprintf(stderr, "warning: severity %d target %.3f outside curve range, clamped\n",
                     row.severity, row.target_map);
      }
    }
    emit(mapping_to_json(rows), args.out);
    return kExitOk;
  }

  const InversionResult inv = invert_curve(curve, *args.target_map);
  if (inv.clamped) {
    std::fprintf(stderr, "warning: target %.6f outside curve range, clamped to param %.6f\n",
                 *args.target_map, inv.param);
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "{\"param\": %.9f, \"clamped\": %s}\n", inv.param,
                inv.clamped ? "true" : "false");
  emit(buf, args.out);
  return kExitOk;
}

int cmd_bench_run(const GlobalOptions& global, const BenchArgs& args) {
  std::uint32_t width = 0, height = 0;
  if (std::sscanf(args.size.c_str(), "%ux%u", &width, &height) != 2 || width == 0 ||
      height == 0) {
    throw InvalidInputError("--size must look like 672x376");
  }
  const std::uint64_t seed = global.seed.value_or(0x77F0);

  AugmentationChain dim_stage;
  dim_stage.stages.push_back(DimConfig{args.k_dim});
  AugmentationChain droplet_stage;
  DropletConfig droplets;
  droplets.k_droplet = args.k_droplet;
  droplet_stage.stages.push_back(droplets);

  const LatencyStats dim = measure_latency(dim_stage, width, height, args.frames, seed);
  const LatencyStats drop = measure_latency(droplet_stage, width, height, args.frames, seed);

  std::printf("stage      resolution   frames   p50_ms   p95_ms   max_ms\n");
  std::printf("dim        %ux%u   %6u   %6.3f   %6.3f   %6.3f\n", width, height, args.frames,
              dim.p50_us / 1000.0, dim.p95_us / 1000.0, dim.max_us / 1000.0);
  std::printf("droplets   %ux%u   %6u   %6.3f   %6.3f   %6.3f\n", width, height, args.frames,
              drop.p50_us / 1000.0, drop.p95_us / 1000.0, drop.max_us / 1000.0);
  return kExitOk;
}

int cmd_toy_generate_run(const GlobalOptions& global, const ToyGenerateArgs& args) {
  fs::create_directories(args.out_dir);
  const std::uint64_t base_seed = global.seed.value_or(0);

  DatasetManifest manifest;
  manifest.root = args.out_dir;
  for (const char* name : kConeClassNames) manifest.class_names.push_back(name);
  manifest.entries.resize(args.scenes);

  parallel_for(args.scenes, global.jobs, [&](std::size_t i) {
    SceneSpec spec;
    spec.width = args.width;
    spec.height = args.height;
    spec.n_cones = args.cones;
    spec.min_cone_px = args.min_size;
    spec.max_cone_px = args.max_size;
    spec.background_gray = static_cast<std::uint8_t>(args.background);
    spec.seed = hash_combine(base_seed, i);

    Scene scene = generate_scene(spec);
    char id[32];
    std::snprintf(id, sizeof(id), "scene_%05zu", i);
    for (auto& gt : scene.ground_truth) gt.image_id = id;

    const std::string image_file = std::string(id) + ".ppm";
    const std::string gt_file = std::string(id) + ".txt";
    save_ppm(scene.frame, fs::path(args.out_dir) / image_file);
    write_text_file(fs::path(args.out_dir) / gt_file,
                    yolo_gt_to_text(scene.ground_truth, spec.width, spec.height));
    manifest.entries[i] = ManifestEntry{id, image_file, gt_file, spec.width, spec.height};
  });

  save_manifest(manifest, fs::path(args.out_dir) / "manifest.json");
  std::cerr << "generated " << args.scenes << " scenes into " << args.out_dir << "\n";
  return kExitOk;
}

int cmd_toy_detect_run(const GlobalOptions&, const ToyDetectArgs& args) {
  ToyDetectorParams params;
  params.saturation_min = args.saturation_min;
  params.contrast_min = args.contrast_min;
  params.min_area = args.min_area;

  std::vector<Detection> all;
  if (!args.manifest.empty()) {
    const DatasetManifest manifest = load_manifest(args.manifest);
    for (const auto& entry : manifest.entries) {
      Frame frame = load_ppm(manifest.root / entry.image_file);
      auto dets = toy_detect(frame, params, entry.image_id);
      all.insert(all.end(), dets.begin(), dets.end());
    }
  }
  for (const std::string& path : args.ppms) {
    Frame frame = load_ppm(path);
    auto dets = toy_detect(frame, params, fs::path(path).stem().string());
    all.insert(all.end(), dets.begin(), dets.end());
  }
  std::cout << detections_to_jsonl(all);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wxaug: deterministic weather degradation for camera frames"};
  app.require_subcommand(1);
  // Let --seed/--config/--jobs appear after the subcommand as well.
  app.fallthrough();

  GlobalOptions global;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the chain/base seed");
  app.add_option("--config", global.config_path, "Augmentation chain JSON file");
  app.add_option("--jobs", global.jobs, "Worker threads for batch commands")
      ->check(CLI::Range(1u, 256u));

  AugmentArgs augment_args;
  auto* cmd_augment = app.add_subcommand("augment", "Augment a dataset in batch");
  cmd_augment->add_option("--manifest", augment_args.manifest, "Input dataset manifest")
      ->required();
  cmd_augment->add_option("--out", augment_args.out_dir, "Output dataset directory")
      ->required();

  StreamArgs stream_args;
  auto* cmd_stream = app.add_subcommand("stream", "Serve the length-prefixed frame protocol");
  cmd_stream->add_option("--transport", stream_args.transport, "stdio or tcp")
      ->check(CLI::IsMember({"stdio", "tcp"}));
  cmd_stream->add_option("--port", stream_args.port, "TCP port (tcp transport)");

  EvalArgs eval_args;
  auto* cmd_eval = app.add_subcommand("eval", "Score detections against a dataset");
  cmd_eval->add_option("--manifest", eval_args.manifest, "Dataset manifest")->required();
  cmd_eval->add_option("--detections", eval_args.detections, "Detection JSONL file")
      ->required();
  cmd_eval->add_option("--iou-thresh", eval_args.iou_thresh, "Matching IoU threshold");
  cmd_eval->add_option("--interp", eval_args.interp, "AP interpolation: all or 11")
      ->check(CLI::IsMember({"all", "11"}));
  cmd_eval->add_option("--out", eval_args.out, "Write the result JSON here");

  SweepArgs sweep_args;
  auto* cmd_sweep = app.add_subcommand("sweep", "Calibration sweep over one stage parameter");
  cmd_sweep->add_option("--manifest", sweep_args.manifest, "Dataset manifest")->required();
  cmd_sweep->add_option("--stage", sweep_args.stage, "droplets or dim")
      ->required()
      ->check(CLI::IsMember({"droplets", "dim"}));
  cmd_sweep->add_option("--grid", sweep_args.grid,
                        "Comma-separated parameter values (default: 11 even points)");
  cmd_sweep->add_option("--repeats", sweep_args.repeats, "Seeded repeats per grid value");
  cmd_sweep->add_option("--detector", sweep_args.detector, "toy or command")
      ->check(CLI::IsMember({"toy", "command"}));
  cmd_sweep->add_option("--detector-cmd", sweep_args.detector_cmd,
                        "External detector shell template ({input} placeholder)");
  cmd_sweep->add_option("--detector-mode", sweep_args.detector_mode, "per-image or batch")
      ->check(CLI::IsMember({"per-image", "batch"}));
  cmd_sweep->add_option("--fog-coef", sweep_args.fog_coef, "Droplet size coefficient");
  cmd_sweep->add_option("--density", sweep_args.density, "Droplets per megapixel");
  cmd_sweep->add_option("--radius-jitter", sweep_args.radius_jitter, "Radius spread");
  cmd_sweep->add_option("--gray-low", sweep_args.gray_low, "Droplet gray, low end")
      ->check(CLI::Range(0u, 255u));
  cmd_sweep->add_option("--gray-high", sweep_args.gray_high, "Droplet gray, high end")
      ->check(CLI::Range(0u, 255u));
  cmd_sweep->add_option("--iou-thresh", sweep_args.iou_thresh, "Matching IoU threshold");
  cmd_sweep->add_option("--out-csv", sweep_args.out_csv, "Curve CSV output path")
      ->required();
  cmd_sweep->add_option("--out-log", sweep_args.out_log, "Per-run JSONL log path");

  InvertArgs invert_args;
  double target_value = 0;
  auto* cmd_invert = app.add_subcommand("invert", "Invert a calibration curve");
  cmd_invert->add_option("--curve", invert_args.curve, "Curve CSV from sweep")->required();
  cmd_invert->add_option("--stage", invert_args.stage, "droplets or dim (target mode)")
      ->check(CLI::IsMember({"droplets", "dim"}));
  auto* target_opt =
      cmd_invert->add_option("--target-map", target_value, "Single target mAP to invert");
  auto* severity_flag = cmd_invert->add_flag("--severity", invert_args.severity,
                                             "Map every built-in severity target");
  target_opt->excludes(severity_flag);
  cmd_invert->add_option("--condition", invert_args.condition,
                         "droplets or low_light (severity mode)")
      ->check(CLI::IsMember({"droplets", "low_light"}));
  cmd_invert->add_option("--out", invert_args.out, "Write the mapping JSON here");

  BenchArgs bench_args;
  auto* cmd_bench = app.add_subcommand("bench", "Measure per-stage latency");
  cmd_bench->add_option("--size", bench_args.size, "Frame size, e.g. 672x376");
  cmd_bench->add_option("--frames", bench_args.frames, "Frames per stage")
      ->check(CLI::Range(1u, 1000000u));
  cmd_bench->add_option("--k-dim", bench_args.k_dim, "Dim parameter for the bench");
  cmd_bench->add_option("--k-droplet", bench_args.k_droplet, "Droplet parameter");

  auto* cmd_toy = app.add_subcommand("toyworld", "Synthetic cone scenes and the toy detector");
  cmd_toy->require_subcommand(1);

  ToyGenerateArgs gen_args;
  auto* cmd_gen = cmd_toy->add_subcommand("generate", "Emit a toy dataset with manifest");
  cmd_gen->add_option("--out", gen_args.out_dir, "Dataset directory")->required();
  cmd_gen->add_option("--scenes", gen_args.scenes, "Number of scenes")
      ->check(CLI::Range(1u, 1000000u));
  cmd_gen->add_option("--width", gen_args.width, "Scene width");
  cmd_gen->add_option("--height", gen_args.height, "Scene height");
  cmd_gen->add_option("--cones", gen_args.cones, "Cones per scene");
  cmd_gen->add_option("--min-size", gen_args.min_size, "Smallest cone height, px");
  cmd_gen->add_option("--max-size", gen_args.max_size, "Largest cone height, px");
  cmd_gen->add_option("--background", gen_args.background, "Background gray level")
      ->check(CLI::Range(0u, 255u));

  ToyDetectArgs det_args;
  auto* cmd_det = cmd_toy->add_subcommand("detect", "Run the toy detector, print JSONL");
  cmd_det->add_option("--ppm", det_args.ppms, "PPM files (image_id = file stem)");
  cmd_det->add_option("--manifest", det_args.manifest, "Detect over a whole dataset");
  cmd_det->add_option("--saturation-min", det_args.saturation_min, "Salience threshold");
  cmd_det->add_option("--contrast-min", det_args.contrast_min, "Contrast threshold");
  cmd_det->add_option("--min-area", det_args.min_area, "Minimum component area, px");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (seed_opt->count() > 0) global.seed = seed_value;
  if (target_opt->count() > 0) invert_args.target_map = target_value;

  try {
    // A supplied chain config must parse even for subcommands that do not
    // consume it; broken input should never pass silently.
    if (!global.config_path.empty()) (void)load_chain_file(global.config_path);

    if (cmd_augment->parsed()) return cmd_augment_run(global, augment_args);
    if (cmd_stream->parsed()) return cmd_stream_run(global, stream_args);
    if (cmd_eval->parsed()) return cmd_eval_run(global, eval_args);
    if (cmd_sweep->parsed()) return cmd_sweep_run(global, sweep_args);
    if (cmd_invert->parsed()) return cmd_invert_run(global, invert_args);
    if (cmd_bench->parsed()) return cmd_bench_run(global, bench_args);
    if (cmd_toy->parsed()) {
      if (cmd_gen->parsed()) return cmd_toy_generate_run(global, gen_args);
      if (cmd_det->parsed()) return cmd_toy_detect_run(global, det_args);
    }
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const DetectorError& e) {
    std::cerr << "detector error: " << e.what() << "\n";
    if (!e.captured_stderr().empty()) {
      std::cerr << "--- detector stderr ---\n" << e.captured_stderr() << "\n";
    }
    return kExitDetector;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}

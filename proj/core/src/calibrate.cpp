#include "wxaug/calibrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wxaug/errors.hpp"
#include "wxaug/rng.hpp"

namespace wxaug {
namespace {

using ordered_json = nlohmann::ordered_json;

void validate_curve_shape(const CalibrationCurve& curve) {
  if (curve.points.empty()) {
    throw InvalidInputError("calibration curve has no points");
  }
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    if (!(curve.points[i].param < curve.points[i + 1].param)) {
      throw InvalidInputError("curve parameters must be strictly increasing");
    }
  }
}

bool is_monotone(const CalibrationCurve& curve) {
  const bool non_increasing =
      direction_of(curve.stage_kind) == MonotoneDirection::kNonIncreasing;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const double a = curve.points[i].map_mean;
    const double b = curve.points[i + 1].map_mean;
    if (non_increasing ? (b > a) : (b < a)) return false;
  }
  return true;
}

StageConfig make_stage(StageKind kind, double param, const DropletConfig& fixed) {
  if (kind == StageKind::kDim) {
    return DimConfig{param};
  }
  DropletConfig cfg = fixed;
  cfg.k_droplet = param;
  return cfg;
}

}  // namespace

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

SweepResult run_sweep(const Dataset& dataset, DetectorAdapter& detector,
                      const SweepOptions& opts, const EvalConfig& eval_config) {
  if (dataset.empty()) throw InvalidInputError("run_sweep: empty dataset");
  if (opts.grid.empty()) throw InvalidInputError("run_sweep: empty parameter grid");
  if (opts.repeats == 0) throw InvalidParameterError("run_sweep: repeats must be >= 1");
  for (std::size_t i = 0; i < opts.grid.size(); ++i) {
    if (!(opts.grid[i] >= 0.0 && opts.grid[i] <= 1.0)) {
      throw InvalidInputError("run_sweep: grid values must lie in [0, 1]");
    }
    if (i > 0 && !(opts.grid[i - 1] < opts.grid[i])) {
      throw InvalidInputError("run_sweep: grid must be strictly increasing");
    }
  }

  const std::vector<GroundTruthBox> ground_truth = all_ground_truth(dataset);

  // mAP of the dataset under one single-stage chain; frame_id is the
  // image's position so droplet fields differ image to image.
  auto evaluate_chain = [&](const AugmentationChain& chain) {
    std::vector<NamedFrame> frames;
    frames.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      Frame f = dataset[i].frame;
      f.frame_id = i;
      frames.push_back(NamedFrame{dataset[i].image_id, apply_chain(f, chain)});
    }
    auto detections = detector.run_batch(frames);
    return mean_average_precision(detections, ground_truth, eval_config).map;
  };

  const std::size_t n_cells = opts.grid.size() * opts.repeats;
  std::vector<RunRecord> runs(n_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t param_idx = cell / opts.repeats;
    const auto repeat = static_cast<std::uint32_t>(cell % opts.repeats);
    const double param = opts.grid[param_idx];
    const std::uint64_t seed = hash_combine(opts.base_seed, repeat);
    AugmentationChain chain;
    chain.seed = seed;
    chain.stages.push_back(make_stage(opts.stage, param, opts.droplet_cfg));
    try {
      runs[cell] = RunRecord{param, repeat, seed, evaluate_chain(chain)};
    } catch (const DetectorError& e) {
      throw DetectorError("sweep cell (param=" + std::to_string(param) +
                              ", repeat=" + std::to_string(repeat) + "): " + e.what(),
                          e.captured_stderr());
    }
  };

  const unsigned jobs =
      detector.concurrent_safe() ? std::max(1u, opts.jobs) : 1u;
  if (jobs <= 1 || n_cells <= 1) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t cell = next.fetch_add(1);
        if (cell >= n_cells) return;
        try {
          run_cell(cell);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n_cells); ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SweepResult result;
  result.curve.stage_kind = opts.stage;
  const double identity = identity_param(opts.stage);
  bool identity_in_grid = false;
  for (std::size_t pi = 0; pi < opts.grid.size(); ++pi) {
    double sum = 0;
    bool all_equal = true;
    for (std::uint32_t r = 0; r < opts.repeats; ++r) {
      sum += runs[pi * opts.repeats + r].map;
      all_equal = all_equal && runs[pi * opts.repeats + r].map == runs[pi * opts.repeats].map;
    }
    // Deterministic stages repeat bit-identically; skip the float
    // summation so their mean is exact (the identity point must equal the
    // baseline to the last bit).
    const double mean = all_equal ? runs[pi * opts.repeats].map : sum / opts.repeats;
    double var = 0;
    for (std::uint32_t r = 0; r < opts.repeats; ++r) {
      const double d = runs[pi * opts.repeats + r].map - mean;
      var += d * d;
    }
    const double std_dev = all_equal ? 0.0 : std::sqrt(std::max(var / opts.repeats, 0.0));
    result.curve.points.push_back(CurvePoint{opts.grid[pi], mean, std_dev, opts.repeats});
    if (opts.grid[pi] == identity) {
      identity_in_grid = true;
      result.curve.baseline_map = mean;
    }
  }
  if (!identity_in_grid) {
    // Clean-dataset mAP; the identity stage is a bit-exact no-op, so no
    // chain needs to run at all.
    std::vector<NamedFrame> frames;
    frames.reserve(dataset.size());
    for (const auto& img : dataset) frames.push_back(NamedFrame{img.image_id, img.frame});
    auto detections = detector.run_batch(frames);
    result.curve.baseline_map =
        mean_average_precision(detections, ground_truth, eval_config).map;
  }
  result.runs = std::move(runs);
  return result;
}

CalibrationCurve fit_monotone(CalibrationCurve curve) {
  validate_curve_shape(curve);
  const bool non_increasing =
      direction_of(curve.stage_kind) == MonotoneDirection::kNonIncreasing;

  // Pool-adjacent-violators for a non-decreasing fit; the non-increasing
  // case runs on negated values.
  struct Block {
    double value;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(curve.points.size());
  for (const CurvePoint& p : curve.points) {
    const double v = non_increasing ? -p.map_mean : p.map_mean;
    blocks.push_back(Block{v, static_cast<double>(p.n_runs), 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].value > blocks.back().value) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.value = (prev.value * prev.weight + top.value * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }

  std::size_t i = 0;
  for (const Block& b : blocks) {
    for (std::size_t k = 0; k < b.count; ++k, ++i) {
      curve.points[i].map_mean = non_increasing ? -b.value : b.value;
    }
  }
  return curve;
}

double map_at_param(const CalibrationCurve& curve, double param) {
  validate_curve_shape(curve);
  const auto& pts = curve.points;
  if (param <= pts.front().param) return pts.front().map_mean;
  if (param >= pts.back().param) return pts.back().map_mean;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (param <= pts[i + 1].param) {
      const double t = (param - pts[i].param) / (pts[i + 1].param - pts[i].param);
      return pts[i].map_mean + t * (pts[i + 1].map_mean - pts[i].map_mean);
    }
  }
  return pts.back().map_mean;
}

InversionResult invert_curve(const CalibrationCurve& curve, double target_map) {
  validate_curve_shape(curve);
  if (!is_monotone(curve)) {
    throw InvalidInputError("invert_curve: curve is not monotone; run fit_monotone first");
  }

  // Walk knots starting from the identity end, i.e. in order of growing
  // degradation; the first parameter achieving the target is the weakest.
  const bool from_front = curve.stage_kind == StageKind::kDroplets;
  const std::size_t n = curve.points.size();
  auto knot = [&](std::size_t j) -> const CurvePoint& {
    return curve.points[from_front ? j : n - 1 - j];
  };

  if (target_map > knot(0).map_mean) return {knot(0).param, true};
  if (target_map == knot(0).map_mean) return {knot(0).param, false};
  // Loop invariant: target < knot(j).map_mean. The first knot that equals
  // the target, or the first segment that straddles it, wins — which is
  // exactly the weakest-degradation tie-break on flat segments.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const CurvePoint& hi = knot(j);
    const CurvePoint& lo = knot(j + 1);
    if (target_map > lo.map_mean) {
      const double t = (hi.map_mean - target_map) / (hi.map_mean - lo.map_mean);
      return {hi.param + t * (lo.param - hi.param), false};
    }
    if (target_map == lo.map_mean) return {lo.param, false};
  }
  return {knot(n - 1).param, true};
}

std::span<const SeverityRow> builtin_severity_table() {
  static constexpr SeverityRow kRows[] = {
      {Condition::kDroplets, 0, 0.793, "clear daylight"},
      {Condition::kDroplets, 1, 0.796, "very light droplets"},
      {Condition::kDroplets, 2, 0.763, "light droplets"},
      {Condition::kDroplets, 3, 0.730, "moderate droplets"},
      {Condition::kDroplets, 4, 0.587, "heavy droplets"},
      {Condition::kLowLight, 0, 0.793, "clear daylight"},
      {Condition::kLowLight, 1, 0.639, "late afternoon"},
      {Condition::kLowLight, 2, 0.273, "sunset"},
      {Condition::kLowLight, 3, 0.043, "dusk"},
      {Condition::kLowLight, 4, 0.010, "night"},
  };
  return kRows;
}

std::vector<MappingRow> build_severity_mapping(const CalibrationCurve& curve,
                                               std::span<const SeverityRow> table,
                                               Condition condition) {
  if (stage_for(condition) != curve.stage_kind) {
    throw InvalidInputError(std::string("severity mapping: curve stage \"") +
                            to_string(curve.stage_kind) + "\" does not match condition \"" +
                            to_string(condition) + "\"");
  }
  std::vector<MappingRow> rows;
  for (const SeverityRow& sev : table) {
    if (sev.condition != condition) continue;
    MappingRow row;
    row.condition = condition;
    row.severity = sev.severity;
    row.target_map = sev.target_map;
    if (sev.severity == 0) {
      row.param = identity_param(curve.stage_kind);
      row.achieved_map_interp = curve.baseline_map;
      row.clamped = false;
    } else {
      const InversionResult inv = invert_curve(curve, sev.target_map);
      row.param = inv.param;
      row.clamped = inv.clamped;
      row.achieved_map_interp = map_at_param(curve, inv.param);
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const MappingRow& a, const MappingRow& b) { return a.severity < b.severity; });
  return rows;
}

std::string curve_to_csv(const CalibrationCurve& curve) {
  std::string out = "param,map_mean,map_std,n_runs\n";
  char buf[128];
  for (const CurvePoint& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f,%.9f,%u\n", p.param, p.map_mean,
                  p.map_std, p.n_runs);
    out += buf;
  }
  return out;
}

CalibrationCurve curve_from_csv(const std::string& text, StageKind kind) {
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line)) throw ParseError("curve csv: empty input");
  // Tolerate a trailing \r from Windows tooling.
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "param,map_mean,map_std,n_runs") {
    throw ParseError("curve csv: unexpected header \"" + line + "\"");
  }
  CalibrationCurve curve;
  curve.stage_kind = kind;
  std::size_t line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    CurvePoint p;
    char extra = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%u%c", &p.param, &p.map_mean, &p.map_std,
                    &p.n_runs, &extra) != 4) {
      throw ParseError("curve csv line " + std::to_string(line_no) + ": malformed row");
    }
    curve.points.push_back(p);
  }
  validate_curve_shape(curve);
  // The CSV does not carry the baseline; the identity-end knot is the
  // closest available stand-in.
  curve.baseline_map = kind == StageKind::kDroplets ? curve.points.front().map_mean
                                                    : curve.points.back().map_mean;
  return curve;
}

std::string runs_to_jsonl(const std::vector<RunRecord>& runs) {
  std::string out;
  for (const RunRecord& r : runs) {
    ordered_json obj;
    obj["param"] = r.param;
    obj["repeat"] = r.repeat;
    obj["seed"] = r.seed;
    obj["map"] = r.map;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> runs_from_jsonl(const std::string& text) {
  std::vector<RunRecord> runs;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("run log line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("param") || !obj.contains("repeat") ||
        !obj.contains("seed") || !obj.contains("map")) {
      throw ParseError("run log line " + std::to_string(line_no) + ": missing fields");
    }
    runs.push_back(RunRecord{obj["param"].get<double>(), obj["repeat"].get<std::uint32_t>(),
                             obj["seed"].get<std::uint64_t>(), obj["map"].get<double>()});
  }
  return runs;
}

std::string mapping_to_json(const std::vector<MappingRow>& rows) {
  ordered_json doc;
  doc["rows"] = ordered_json::array();
  for (const MappingRow& r : rows) {
    ordered_json row;
    row["condition"] = to_string(r.condition);
    row["severity"] = r.severity;
    row["target_map"] = r.target_map;
    row["param"] = r.param;
    row["achieved_map_interp"] = r.achieved_map_interp;
    row["clamped"] = r.clamped;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

const char* to_string(Condition c) noexcept {
  return c == Condition::kDroplets ? "droplets" : "low_light";
}

const char* to_string(StageKind k) noexcept {
  return k == StageKind::kDroplets ? "droplets" : "dim";
}

}  // namespace wxaug

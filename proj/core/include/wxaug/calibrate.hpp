#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wxaug/augment.hpp"
#include "wxaug/detector.hpp"
#include "wxaug/eval.hpp"

namespace wxaug {

/// Which single-parameter stage a calibration curve describes.
enum class StageKind { kDim, kDroplets };

/// The parameter value at which the stage is a bit-exact identity.
constexpr double identity_param(StageKind kind) noexcept {
  return kind == StageKind::kDroplets ? 0.0 : 1.0;
}

/// Expected monotone direction of mAP in the parameter: droplets degrade
/// as k rises (non-increasing), dimming recovers as k rises
/// (non-decreasing).
enum class MonotoneDirection { kNonIncreasing, kNonDecreasing };

constexpr MonotoneDirection direction_of(StageKind kind) noexcept {
  return kind == StageKind::kDroplets ? MonotoneDirection::kNonIncreasing
                                      : MonotoneDirection::kNonDecreasing;
}

struct CurvePoint {
  double param = 0;
  double map_mean = 0;
  double map_std = 0;
  std::uint32_t n_runs = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Empirical parameter-to-mAP curve: points sorted by strictly increasing
/// parameter, plus the mAP measured at the identity parameter.
struct CalibrationCurve {
  StageKind stage_kind = StageKind::kDroplets;
  std::vector<CurvePoint> points;
  double baseline_map = 0;

  friend bool operator==(const CalibrationCurve&, const CalibrationCurve&) = default;
};

struct SweepOptions {
  StageKind stage = StageKind::kDroplets;
  std::vector<double> grid;       // strictly increasing values in [0, 1]
  std::uint32_t repeats = 5;
  std::uint64_t base_seed = 0;
  DropletConfig droplet_cfg;      // fixed knobs; k_droplet comes from the grid
  unsigned jobs = 1;
};

/// Evenly spaced default grid: 11 points over [0, 1].
std::vector<double> default_sweep_grid();

/// One sweep cell, logged so every mean/std can be recomputed offline.
struct RunRecord {
  double param = 0;
  std::uint32_t repeat = 0;
  std::uint64_t seed = 0;
  double map = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SweepResult {
  CalibrationCurve curve;
  std::vector<RunRecord> runs;  // ordered by (param, repeat)
};

/// For every (grid value, repeat) cell: builds a single-stage chain with
/// seed = hash_combine(base_seed, repeat), augments every dataset image
/// (frame_id = image index), runs the detector and scores mAP against the
/// dataset ground truth. Point mean/std are over repeats (population std).
/// baseline_map is the clean-dataset mAP; when the identity parameter is
/// in the grid its point mean equals the baseline exactly.
/// Cells run concurrently under opts.jobs when the adapter allows it.
/// Throws InvalidInputError on an empty dataset or bad grid; detector
/// failures abort the sweep with the failing cell named.
SweepResult run_sweep(const Dataset& dataset, DetectorAdapter& detector,
                      const SweepOptions& opts, const EvalConfig& eval_config = {});

/// Isotonic regression (pool-adjacent-violators, least squares, weighted
/// by n_runs) of map_mean in the curve's declared direction. Parameters
/// and an already-monotone curve are untouched.
CalibrationCurve fit_monotone(CalibrationCurve curve);

/// Piecewise-linear value of the curve at a parameter; clamps to the end
/// knots outside the sampled range.
double map_at_param(const CalibrationCurve& curve, double param);

struct InversionResult {
  double param = 0;
  bool clamped = false;
};

/// Piecewise-linear inverse: the parameter whose interpolated mAP equals
/// target_map. On flat segments the endpoint with the weakest degradation
/// wins (smallest k_droplet / largest k_dim); targets outside the curve's
/// mAP range clamp to the nearest end with clamped = true.
/// The curve must already be monotone in its declared direction.
InversionResult invert_curve(const CalibrationCurve& curve, double target_map);

// -- severity table -----------------------------------------------------------

enum class Condition { kDroplets, kLowLight };

constexpr StageKind stage_for(Condition c) noexcept {
  return c == Condition::kDroplets ? StageKind::kDroplets : StageKind::kDim;
}

struct SeverityRow {
  Condition condition;
  int severity;       // 0 (clear) .. 4 (worst)
  double target_map;  // perception mAP measured under the real condition
  const char* description;
};

/// Built-in severity targets from the real-world reference datasets.
/// Severity 0 is the clear-daylight baseline shared by both conditions.
std::span<const SeverityRow> builtin_severity_table();

/// Reference constants from the same study, kept as documentation (no
/// test asserts them against this pipeline's curves: they depend on the
/// original datasets and detector).
inline constexpr double kSimulatedIdealMap = 0.715;
inline constexpr double kReferenceDropletParam = 0.55;
inline constexpr double kReferenceDropletMap = 0.490;
inline constexpr double kReferenceDimParam = 0.78;
inline constexpr double kReferenceDimMap = 0.273;
inline constexpr double kRealToSimOffsetPp = 8.0;

struct MappingRow {
  Condition condition;
  int severity = 0;
  double target_map = 0;
  double param = 0;
  double achieved_map_interp = 0;
  bool clamped = false;
};

/// One row per severity of the given condition. Severity 0 maps to the
/// identity parameter by definition; the rest go through invert_curve on
/// the (already fitted) curve. The curve's stage kind must match the
/// condition (droplets <-> droplets, dim <-> low light).
std::vector<MappingRow> build_severity_mapping(const CalibrationCurve& curve,
                                               std::span<const SeverityRow> table,
                                               Condition condition);

// -- serialization ------------------------------------------------------------

/// Curve CSV: header `param,map_mean,map_std,n_runs`, one row per knot,
/// parameters ascending, 9 decimal places.
std::string curve_to_csv(const CalibrationCurve& curve);
CalibrationCurve curve_from_csv(const std::string& text, StageKind kind);

/// Per-run log JSONL: {"param": f, "repeat": i, "seed": u64, "map": f}.
std::string runs_to_jsonl(const std::vector<RunRecord>& runs);
std::vector<RunRecord> runs_from_jsonl(const std::string& text);

std::string mapping_to_json(const std::vector<MappingRow>& rows);

const char* to_string(Condition c) noexcept;
const char* to_string(StageKind k) noexcept;

}  // namespace wxaug

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "wxaug/calibrate.hpp"
#include "wxaug/errors.hpp"
#include "wxaug/rng.hpp"
#include "wxaug/toyworld.hpp"

using namespace wxaug;

namespace {

CalibrationCurve curve_of(StageKind kind, std::vector<std::pair<double, double>> knots,
                          double baseline) {
  CalibrationCurve curve;
  curve.stage_kind = kind;
  for (auto [p, m] : knots) curve.points.push_back(CurvePoint{p, m, 0.0, 5});
  curve.baseline_map = baseline;
  return curve;
}

Dataset toy_dataset(std::size_t n_scenes, std::uint64_t seed) {
  Dataset dataset;
  for (std::size_t i = 0; i < n_scenes; ++i) {
    SceneSpec spec;
    spec.width = 320;
    spec.height = 240;
    spec.n_cones = 6;
    spec.seed = hash_combine(seed, i);
    Scene scene = generate_scene(spec);
    DatasetImage img;
    img.image_id = "scene" + std::to_string(i);
    img.frame = std::move(scene.frame);
    img.ground_truth = std::move(scene.ground_truth);
    for (auto& g : img.ground_truth) g.image_id = img.image_id;
    dataset.push_back(std::move(img));
  }
  return dataset;
}

}  // namespace

TEST_CASE("pav pools the hand case") {
  auto curve = curve_of(StageKind::kDroplets,
                        {{0.0, 0.80}, {0.5, 0.85}, {1.0, 0.60}}, 0.80);
  CalibrationCurve fitted = fit_monotone(curve);
  REQUIRE(fitted.points.size() == 3);
  CHECK(fitted.points[0].map_mean == doctest::Approx(0.825).epsilon(1e-12));
  CHECK(fitted.points[1].map_mean == doctest::Approx(0.825).epsilon(1e-12));
  CHECK(fitted.points[2].map_mean == doctest::Approx(0.60).epsilon(1e-12));
  // Parameters untouched.
  CHECK(fitted.points[0].param == 0.0);
  CHECK(fitted.points[1].param == 0.5);
}

TEST_CASE("pav leaves monotone curves bit-identical") {
  auto curve = curve_of(StageKind::kDroplets,
                        {{0.0, 0.9}, {0.5, 0.7}, {1.0, 0.2}}, 0.9);
  CHECK(fit_monotone(curve) == curve);

  auto rising = curve_of(StageKind::kDim, {{0.0, 0.1}, {0.5, 0.1}, {1.0, 0.9}}, 0.9);
  CHECK(fit_monotone(rising) == rising);

  auto single = curve_of(StageKind::kDroplets, {{0.5, 0.5}}, 1.0);
  CHECK(fit_monotone(single) == single);
}

TEST_CASE("pav preserves pooled-block means") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    CalibrationCurve curve;
    curve.stage_kind = StageKind::kDim;
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double m = rng.next_double();
      curve.points.push_back(
          CurvePoint{static_cast<double>(i) / n, m, 0.0, 5});
      sum += m;
    }
    CalibrationCurve fitted = fit_monotone(curve);
    double fitted_sum = 0;
    for (const auto& p : fitted.points) fitted_sum += p.map_mean;
    CHECK(fitted_sum == doctest::Approx(sum).epsilon(1e-9));
    // And the result is actually monotone non-decreasing.
    for (std::size_t i = 0; i + 1 < fitted.points.size(); ++i) {
      CHECK(fitted.points[i].map_mean <= fitted.points[i + 1].map_mean + 1e-15);
    }
  }
}

TEST_CASE("invert_curve hand cases") {
  SUBCASE("interpolates a midpoint") {
    auto curve = curve_of(StageKind::kDroplets, {{0.4, 0.8}, {0.6, 0.6}}, 0.8);
    auto inv = invert_curve(curve, 0.7);
    CHECK(inv.param == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(inv.clamped);
  }
  SUBCASE("knot targets return the knot") {
    auto curve =
        curve_of(StageKind::kDroplets, {{0.0, 1.0}, {0.5, 0.7}, {1.0, 0.3}}, 1.0);
    for (const auto& p : curve.points) {
      auto inv = invert_curve(curve, p.map_mean);
      CHECK(inv.param == p.param);
      CHECK_FALSE(inv.clamped);
    }
  }
  SUBCASE("flat segments resolve to the weakest degradation") {
    auto flat_drop = curve_of(StageKind::kDroplets,
                              {{0.0, 0.9}, {0.3, 0.7}, {0.6, 0.7}, {1.0, 0.2}}, 0.9);
    CHECK(invert_curve(flat_drop, 0.7).param == 0.3);  // smallest k_droplet

    auto flat_dim = curve_of(StageKind::kDim,
                             {{0.0, 0.2}, {0.4, 0.7}, {0.7, 0.7}, {1.0, 0.9}}, 0.9);
    CHECK(invert_curve(flat_dim, 0.7).param == 0.7);  // largest k_dim
  }
  SUBCASE("out-of-range targets clamp to the nearest end") {
    auto curve = curve_of(StageKind::kDroplets, {{0.0, 0.9}, {1.0, 0.3}}, 0.9);
    auto above = invert_curve(curve, 0.95);
    CHECK(above.param == 0.0);  // identity end
    CHECK(above.clamped);
    auto below = invert_curve(curve, 0.1);
    CHECK(below.param == 1.0);
    CHECK(below.clamped);
  }
  SUBCASE("single-point curves") {
    auto curve = curve_of(StageKind::kDroplets, {{0.5, 0.5}}, 1.0);
    CHECK(invert_curve(curve, 0.5).param == 0.5);
    CHECK(invert_curve(curve, 0.9).clamped);
  }
  SUBCASE("non-monotone input is rejected") {
    auto bumpy = curve_of(StageKind::kDroplets, {{0.0, 0.5}, {1.0, 0.9}}, 0.5);
    CHECK_THROWS_AS(invert_curve(bumpy, 0.7), InvalidInputError);
  }
  SUBCASE("empty curves are invalid") {
    CalibrationCurve empty;
    CHECK_THROWS_AS(invert_curve(empty, 0.5), InvalidInputError);
  }
}

TEST_CASE("inversion after fitting lands on every knot value within 1e-9") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    CalibrationCurve curve;
    curve.stage_kind = trial % 2 == 0 ? StageKind::kDroplets : StageKind::kDim;
    const int n = static_cast<int>(rng.uniform_int(2, 9));
    for (int i = 0; i < n; ++i) {
      curve.points.push_back(
          CurvePoint{static_cast<double>(i) / (n - 1), rng.next_double(), 0.0, 5});
    }
    curve.baseline_map = curve.points.front().map_mean;
    CalibrationCurve fitted = fit_monotone(curve);
    for (const auto& p : fitted.points) {
      auto inv = invert_curve(fitted, p.map_mean);
      CHECK_FALSE(inv.clamped);
      CHECK(std::abs(map_at_param(fitted, inv.param) - p.map_mean) < 1e-9);
    }
  }
}

TEST_CASE("builtin severity table transcription") {
  auto table = builtin_severity_table();
  REQUIRE(table.size() == 10);

  auto target = [&](Condition c, int s) {
    for (const auto& row : table) {
      if (row.condition == c && row.severity == s) return row.target_map;
    }
    FAIL("missing severity row");
    return -1.0;
  };
  CHECK(target(Condition::kDroplets, 0) == 0.793);
  CHECK(target(Condition::kDroplets, 1) == 0.796);
  CHECK(target(Condition::kDroplets, 2) == 0.763);
  CHECK(target(Condition::kDroplets, 3) == 0.730);
  CHECK(target(Condition::kDroplets, 4) == 0.587);
  CHECK(target(Condition::kLowLight, 0) == 0.793);
  CHECK(target(Condition::kLowLight, 1) == 0.639);
  CHECK(target(Condition::kLowLight, 2) == 0.273);
  CHECK(target(Condition::kLowLight, 3) == 0.043);
  CHECK(target(Condition::kLowLight, 4) == 0.010);
  CHECK(kSimulatedIdealMap == 0.715);
}

TEST_CASE("severity mapping rows") {
  // Synthetic droplet curve wide enough to cover all severity targets.
  auto curve = curve_of(StageKind::kDroplets,
                        {{0.0, 0.9}, {0.25, 0.8}, {0.5, 0.7}, {0.75, 0.6}, {1.0, 0.4}},
                        0.9);
  auto rows = build_severity_mapping(curve, builtin_severity_table(), Condition::kDroplets);
  REQUIRE(rows.size() == 5);

  CHECK(rows[0].severity == 0);
  CHECK(rows[0].param == 0.0);  // identity by definition
  CHECK_FALSE(rows[0].clamped);
  CHECK(rows[0].achieved_map_interp == 0.9);

  CHECK(rows[4].severity == 4);
  CHECK(rows[4].target_map == 0.587);
  // Droplet severities map to non-decreasing parameters.
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].param <= rows[i + 1].param + 1e-12);
  }
  // Unclamped rows achieve their target through the curve.
  for (const auto& row : rows) {
    if (!row.clamped && row.severity > 0) {
      CHECK(std::abs(row.achieved_map_interp - row.target_map) < 1e-9);
    }
  }

  SUBCASE("low light severity 2 carries 0.273") {
    auto dim_curve = curve_of(StageKind::kDim,
                              {{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.9}}, 0.9);
    auto dim_rows =
        build_severity_mapping(dim_curve, builtin_severity_table(), Condition::kLowLight);
    REQUIRE(dim_rows.size() == 5);
    CHECK(dim_rows[2].target_map == 0.273);
    CHECK(dim_rows[0].param == 1.0);  // dim identity
    // Low-light severities map to non-increasing k_dim.
    for (std::size_t i = 0; i + 1 < dim_rows.size(); ++i) {
      CHECK(dim_rows[i].param >= dim_rows[i + 1].param - 1e-12);
    }
  }

  SUBCASE("condition and curve kind must agree") {
    CHECK_THROWS_AS(
        build_severity_mapping(curve, builtin_severity_table(), Condition::kLowLight),
        InvalidInputError);
  }
}

TEST_CASE("run_sweep on the toy world") {
  Dataset dataset = toy_dataset(4, 1);
  ToyDetector detector;

  SweepOptions opts;
  opts.stage = StageKind::kDroplets;
  opts.grid = {0.0, 0.5, 1.0};
  opts.repeats = 2;
  opts.base_seed = 77;
  opts.droplet_cfg.density = 400;

  SweepResult result = run_sweep(dataset, detector, opts);
  REQUIRE(result.curve.points.size() == 3);
  REQUIRE(result.runs.size() == 6);

  SUBCASE("identity point equals the baseline exactly") {
    CHECK(result.curve.points[0].param == 0.0);
    CHECK(result.curve.points[0].map_mean == result.curve.baseline_map);
    CHECK(result.curve.points[0].map_std == 0.0);
    CHECK(result.curve.baseline_map == 1.0);  // clean toy scenes
  }

  SUBCASE("points aggregate their run records") {
    for (std::size_t pi = 0; pi < result.curve.points.size(); ++pi) {
      double sum = 0;
      for (const auto& run : result.runs) {
        if (run.param == result.curve.points[pi].param) sum += run.map;
      }
      CHECK(result.curve.points[pi].map_mean ==
            doctest::Approx(sum / opts.repeats).epsilon(1e-12));
    }
  }

  SUBCASE("bitwise reproducible") {
    SweepResult again = run_sweep(dataset, detector, opts);
    CHECK(again.curve == result.curve);
    CHECK(again.runs == result.runs);
  }

  SUBCASE("parallel execution matches serial") {
    SweepOptions parallel = opts;
    parallel.jobs = 4;
    SweepResult par = run_sweep(dataset, detector, parallel);
    CHECK(par.curve == result.curve);
    CHECK(par.runs == result.runs);
  }

  SUBCASE("per-run log round-trips and recomputes the means") {
    const std::string jsonl = runs_to_jsonl(result.runs);
    auto parsed = runs_from_jsonl(jsonl);
    CHECK(parsed == result.runs);
  }
}

TEST_CASE("run_sweep input validation") {
  Dataset dataset = toy_dataset(1, 2);
  ToyDetector detector;
  SweepOptions opts;
  opts.grid = {0.0, 1.0};

  SUBCASE("empty dataset") {
    Dataset empty;
    CHECK_THROWS_AS(run_sweep(empty, detector, opts), InvalidInputError);
  }
  SUBCASE("empty grid") {
    opts.grid.clear();
    CHECK_THROWS_AS(run_sweep(dataset, detector, opts), InvalidInputError);
  }
  SUBCASE("non-increasing grid") {
    opts.grid = {0.5, 0.5};
    CHECK_THROWS_AS(run_sweep(dataset, detector, opts), InvalidInputError);
  }
  SUBCASE("grid outside [0, 1]") {
    opts.grid = {0.0, 1.5};
    CHECK_THROWS_AS(run_sweep(dataset, detector, opts), InvalidInputError);
  }
  SUBCASE("zero repeats") {
    opts.repeats = 0;
    CHECK_THROWS_AS(run_sweep(dataset, detector, opts), InvalidParameterError);
  }
}

namespace {

/// Fails once the stage actually degrades anything, i.e. on non-identity
/// parameters.
class FlakyDetector final : public DetectorAdapter {
public:
  std::vector<Detection> run_batch(const std::vector<NamedFrame>& frames) override {
    ToyDetector toy;
    auto dets = toy.run_batch(frames);
    ++calls_;
    if (calls_ > 2) throw DetectorError("synthetic failure", "stub stderr");
    return dets;
  }
  bool concurrent_safe() const noexcept override { return false; }
  std::string name() const override { return "flaky"; }

private:
  int calls_ = 0;
};

}  // namespace

TEST_CASE("sweep aborts identifying the failing cell") {
  Dataset dataset = toy_dataset(2, 9);
  FlakyDetector detector;
  SweepOptions opts;
  opts.stage = StageKind::kDim;
  opts.grid = {0.0, 0.5, 1.0};
  opts.repeats = 1;
  try {
    run_sweep(dataset, detector, opts);
    FAIL("expected DetectorError");
  } catch (const DetectorError& e) {
    const std::string what = e.what();
    // The third cell is (param 1.0, repeat 0).
    CHECK(what.find("param=1.0") != std::string::npos);
    CHECK(what.find("repeat=0") != std::string::npos);
    CHECK(e.captured_stderr() == "stub stderr");
  }
}

TEST_CASE("sweep with a single point has zero std") {
  Dataset dataset = toy_dataset(2, 3);
  ToyDetector detector;
  SweepOptions opts;
  opts.stage = StageKind::kDim;
  opts.grid = {0.9};
  opts.repeats = 1;
  SweepResult result = run_sweep(dataset, detector, opts);
  REQUIRE(result.curve.points.size() == 1);
  CHECK(result.curve.points[0].map_std == 0.0);
  CHECK(result.curve.points[0].n_runs == 1);
  // Identity (k_dim = 1) absent from the grid: baseline computed anyway.
  CHECK(result.curve.baseline_map == 1.0);
}

TEST_CASE("curve csv serialization") {
  auto curve = curve_of(StageKind::kDroplets,
                        {{0.0, 1.0}, {0.5, 0.654321987}, {1.0, 0.25}}, 1.0);
  curve.points[1].map_std = 0.012345678;

  const std::string csv = curve_to_csv(curve);
  CHECK(csv.substr(0, 28) == "param,map_mean,map_std,n_run");
  CHECK(csv.find("0.500000000,0.654321987,0.012345678,5") != std::string::npos);

  CalibrationCurve back = curve_from_csv(csv, StageKind::kDroplets);
  REQUIRE(back.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.points[i].param == doctest::Approx(curve.points[i].param).epsilon(1e-9));
    CHECK(back.points[i].map_mean ==
          doctest::Approx(curve.points[i].map_mean).epsilon(1e-9));
    CHECK(back.points[i].n_runs == curve.points[i].n_runs);
  }
  CHECK(back.baseline_map == doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("malformed csv is rejected") {
    CHECK_THROWS_AS(curve_from_csv("nope\n", StageKind::kDim), ParseError);
    CHECK_THROWS_AS(curve_from_csv("param,map_mean,map_std,n_runs\n1,2\n",
                                   StageKind::kDim),
                    ParseError);
  }
}

TEST_CASE("mapping json mirrors the rows") {
  auto curve = curve_of(StageKind::kDroplets, {{0.0, 0.9}, {1.0, 0.4}}, 0.9);
  auto rows = build_severity_mapping(curve, builtin_severity_table(), Condition::kDroplets);
  const std::string json = mapping_to_json(rows);
  CHECK(json.find("\"condition\": \"droplets\"") != std::string::npos);
  CHECK(json.find("\"severity\": 4") != std::string::npos);
  CHECK(json.find("\"target_map\": 0.587") != std::string::npos);
  CHECK(json.find("\"clamped\"") != std::string::npos);
}

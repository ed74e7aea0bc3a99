#include <benchmark/benchmark.h>

#include "wxaug/augment.hpp"
#include "wxaug/eval.hpp"
#include "wxaug/ppm.hpp"
#include "wxaug/rng.hpp"
#include "wxaug/toyworld.hpp"
#include "wxaug/wire.hpp"

using namespace wxaug;

namespace {

Frame bench_frame(std::uint32_t w, std::uint32_t h) {
  Frame f = new_frame(w, h);
  SplitMix64 rng(0xBE7C);
  rng.fill_bytes(f.pixels);
  return f;
}

void BM_ApplyDimming(benchmark::State& state) {
  const Frame f = bench_frame(static_cast<std::uint32_t>(state.range(0)),
                              static_cast<std::uint32_t>(state.range(1)));
  const DimConfig cfg{0.5};
  for (auto _ : state) {
    Frame out = apply_dimming(f, cfg);
    benchmark::DoNotOptimize(out.pixels.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(f.pixels.size()));
}
BENCHMARK(BM_ApplyDimming)->Args({672, 376})->Args({608, 352})->Args({1280, 720});

void BM_SampleDropletField(benchmark::State& state) {
  DropletConfig cfg;
  cfg.k_droplet = 0.5;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    DropletField field = sample_droplet_field(672, 376, cfg, seed++);
    benchmark::DoNotOptimize(field.discs.data());
  }
}
BENCHMARK(BM_SampleDropletField);

void BM_ApplyDroplets(benchmark::State& state) {
  const Frame f = bench_frame(static_cast<std::uint32_t>(state.range(0)),
                              static_cast<std::uint32_t>(state.range(1)));
  DropletConfig cfg;
  cfg.k_droplet = 0.5;
  const DropletField field = sample_droplet_field(f.width, f.height, cfg, 7);
  for (auto _ : state) {
    Frame out = apply_droplets(f, field);
    benchmark::DoNotOptimize(out.pixels.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(f.pixels.size()));
}
BENCHMARK(BM_ApplyDroplets)->Args({672, 376})->Args({608, 352})->Args({1280, 720});

void BM_DropletStagePerFrame(benchmark::State& state) {
  // Deployment cost: field sampling + compositing, fresh seed per frame.
  const Frame f = bench_frame(672, 376);
  DropletConfig cfg;
  cfg.k_droplet = 0.5;
  std::uint64_t frame_id = 0;
  for (auto _ : state) {
    DropletField field = sample_droplet_field(f.width, f.height, cfg,
                                              stage_seed(1, frame_id++, 0));
    Frame out = apply_droplets(f, field);
    benchmark::DoNotOptimize(out.pixels.data());
  }
}
BENCHMARK(BM_DropletStagePerFrame);

void BM_PpmEncode(benchmark::State& state) {
  const Frame f = bench_frame(672, 376);
  for (auto _ : state) {
    auto bytes = encode_ppm(f);
    benchmark::DoNotOptimize(bytes.data());
  }
}
BENCHMARK(BM_PpmEncode);

void BM_WireRoundTrip(benchmark::State& state) {
  const Frame f = bench_frame(672, 376);
  for (auto _ : state) {
    MemoryStream in(encode_wire_frame(f));
    auto back = read_wire_frame(in);
    benchmark::DoNotOptimize(back->pixels.data());
  }
}
BENCHMARK(BM_WireRoundTrip);

void BM_ToyDetect(benchmark::State& state) {
  SceneSpec spec;
  spec.seed = 3;
  const Scene scene = generate_scene(spec);
  for (auto _ : state) {
    auto dets = toy_detect(scene.frame);
    benchmark::DoNotOptimize(dets.data());
  }
}
BENCHMARK(BM_ToyDetect);

}  // namespace

BENCHMARK_MAIN();

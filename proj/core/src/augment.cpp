#include "wxaug/augment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "wxaug/errors.hpp"

namespace wxaug {
namespace {

using ordered_json = nlohmann::ordered_json;

/// The project-wide rounding rule: round half up, then clamp to [0, 255].
/// Both kernels use exactly this so golden outputs are bit-stable.
inline std::uint8_t round_channel(double v) {
  double r = std::floor(v + 0.5);
  if (r < 0.0) return 0;
  if (r > 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

inline std::int64_t round_half_up_i64(double v) {
  return static_cast<std::int64_t>(std::floor(v + 0.5));
}

void require_valid_frame(const Frame& f, const char* op) {
  if (f.width == 0 || f.height == 0 || f.pixels.size() != f.byte_size()) {
    throw InvalidDimensionError(std::string(op) + ": frame invariant violated");
  }
}

}  // namespace

void validate(const DimConfig& cfg) {
  if (!(cfg.k_dim >= 0.0 && cfg.k_dim <= 1.0)) {
    throw InvalidParameterError("k_dim must be in [0, 1], got " +
                                std::to_string(cfg.k_dim));
  }
}

void validate(const DropletConfig& cfg) {
  if (!(cfg.k_droplet >= 0.0 && cfg.k_droplet <= 1.0)) {
    throw InvalidParameterError("k_droplet must be in [0, 1], got " +
                                std::to_string(cfg.k_droplet));
  }
  if (!(cfg.fog_coef > 0.0 && cfg.fog_coef <= 1.0)) {
    throw InvalidParameterError("fog_coef must be in (0, 1], got " +
                                std::to_string(cfg.fog_coef));
  }
  if (!(cfg.density >= 0.0)) {
    throw InvalidParameterError("density must be >= 0");
  }
  if (!(cfg.radius_jitter >= 0.0 && cfg.radius_jitter < 1.0)) {
    throw InvalidParameterError("radius_jitter must be in [0, 1)");
  }
  if (cfg.gray_low > cfg.gray_high) {
    throw InvalidParameterError("gray_low must be <= gray_high");
  }
}

Frame apply_dimming(const Frame& frame, const DimConfig& cfg) {
  require_valid_frame(frame, "apply_dimming");
  validate(cfg);

  // 256-entry table: the transform only depends on the channel value.
  std::uint8_t lut[256];
  for (int c = 0; c < 256; ++c) {
    lut[c] = round_channel(static_cast<double>(c) * cfg.k_dim);
  }

  Frame out = frame;
  for (auto& b : out.pixels) b = lut[b];
  return out;
}

DropletField sample_droplet_field(std::uint32_t width, std::uint32_t height,
                                  const DropletConfig& cfg, std::uint64_t seed) {
  if (width == 0 || height == 0) {
    throw InvalidDimensionError("sample_droplet_field: zero dimension");
  }
  validate(cfg);

  const double r0 = std::max<double>(
      static_cast<double>(round_half_up_i64(cfg.fog_coef * std::min(width, height) / 10.0)),
      2.0);
  const std::int64_t count = round_half_up_i64(
      cfg.density * static_cast<double>(width) * static_cast<double>(height) / 1e6);

  DropletField field;
  field.source_seed = seed;
  field.source_width = width;
  field.source_height = height;
  field.discs.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));

  SplitMix64 rng(seed);
  const double r_lo = (1.0 - cfg.radius_jitter) * r0;
  const double r_hi = (1.0 + cfg.radius_jitter) * r0;
  for (std::int64_t i = 0; i < count; ++i) {
    Disc d;
    d.cx = rng.uniform(0.0, static_cast<double>(width));
    d.cy = rng.uniform(0.0, static_cast<double>(height));
    d.radius = std::max(rng.uniform(r_lo, r_hi), 1.0);
    d.alpha = cfg.k_droplet * rng.uniform(0.5, 1.0);
    d.gray = static_cast<std::uint8_t>(rng.uniform_int(cfg.gray_low, cfg.gray_high));
    field.discs.push_back(d);
  }
  return field;
}

Frame apply_droplets(const Frame& frame, const DropletField& field) {
  require_valid_frame(frame, "apply_droplets");
  if (field.source_width != frame.width || field.source_height != frame.height) {
    throw FieldMismatchError("droplet field sampled for " +
                             std::to_string(field.source_width) + "x" +
                             std::to_string(field.source_height) + ", frame is " +
                             std::to_string(frame.width) + "x" +
                             std::to_string(frame.height));
  }

  struct DiscBounds {
    double cx, cy, r2, alpha, inv_alpha, gray;
    std::int64_t x0, x1, y0, y1;  // inclusive pixel bounds
  };
  std::vector<DiscBounds> discs;
  discs.reserve(field.discs.size());
  for (const Disc& d : field.discs) {
    DiscBounds b;
    b.cx = d.cx;
    b.cy = d.cy;
    b.r2 = d.radius * d.radius;
    b.alpha = d.alpha;
    b.inv_alpha = 1.0 - d.alpha;
    b.gray = static_cast<double>(d.gray);
    b.x0 = static_cast<std::int64_t>(std::floor(d.cx - d.radius));
    b.x1 = static_cast<std::int64_t>(std::ceil(d.cx + d.radius));
    b.y0 = static_cast<std::int64_t>(std::floor(d.cy - d.radius));
    b.y1 = static_cast<std::int64_t>(std::ceil(d.cy + d.radius));
    discs.push_back(b);
  }

  Frame out = frame;
  // Pixel-major fold over the disc list keeps the sequential blend
  // semantics (a pixel under several discs is rounded between blends,
  // exactly in list order) with a single pass over the output buffer.
  // Membership is tested at the pixel center.
  std::uint8_t* px = out.pixels.data();
  for (std::int64_t y = 0; y < static_cast<std::int64_t>(out.height); ++y) {
    const double pcy = static_cast<double>(y) + 0.5;
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(out.width); ++x, px += 3) {
      const double pcx = static_cast<double>(x) + 0.5;
      for (const DiscBounds& d : discs) {
        if (y < d.y0 || y > d.y1 || x < d.x0 || x > d.x1) continue;
        const double dx = pcx - d.cx;
        const double dy = pcy - d.cy;
        if (dx * dx + dy * dy > d.r2) continue;
        const double add = d.alpha * d.gray;
        px[0] = round_channel(d.inv_alpha * px[0] + add);
        px[1] = round_channel(d.inv_alpha * px[1] + add);
        px[2] = round_channel(d.inv_alpha * px[2] + add);
      }
    }
  }
  return out;
}

Frame apply_chain(const Frame& frame, const AugmentationChain& chain) {
  require_valid_frame(frame, "apply_chain");
  Frame out = frame;
  for (std::size_t i = 0; i < chain.stages.size(); ++i) {
    const StageConfig& stage = chain.stages[i];
    if (const auto* dim = std::get_if<DimConfig>(&stage)) {
      out = apply_dimming(out, *dim);
    } else {
      const auto& droplets = std::get<DropletConfig>(stage);
      DropletField field = sample_droplet_field(
          out.width, out.height, droplets, stage_seed(chain.seed, frame.frame_id, i));
      out = apply_droplets(out, field);
    }
  }
  return out;
}

LatencyStats latency_stats_from_us(std::vector<double> samples_us) {
  if (samples_us.empty()) return {};
  std::sort(samples_us.begin(), samples_us.end());
  auto nearest_rank = [&](double q) {
    std::size_t n = samples_us.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    return samples_us[std::min(rank - 1, n - 1)];
  };
  LatencyStats s;
  s.p50_us = nearest_rank(0.50);
  s.p95_us = nearest_rank(0.95);
  s.max_us = samples_us.back();
  return s;
}

LatencyStats measure_latency(const AugmentationChain& stage, std::uint32_t width,
                             std::uint32_t height, std::uint32_t n_frames,
                             std::uint64_t seed) {
  if (n_frames == 0) {
    throw InvalidParameterError("measure_latency: n_frames must be >= 1");
  }
  if (width == 0 || height == 0) {
    throw InvalidDimensionError("measure_latency: zero dimension");
  }
  for (const StageConfig& s : stage.stages) {
    std::visit([](const auto& cfg) { validate(cfg); }, s);
  }

  // Small pool of randomized frames, generated outside the timed region.
  const std::size_t pool_size = std::min<std::size_t>(n_frames, 8);
  std::vector<Frame> pool;
  pool.reserve(pool_size);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < pool_size; ++i) {
    Frame f = new_frame(width, height);
    rng.fill_bytes(f.pixels);
    pool.push_back(std::move(f));
  }

  std::vector<double> samples_us;
  samples_us.reserve(n_frames);
  using clock = std::chrono::steady_clock;
  for (std::uint32_t i = 0; i < n_frames; ++i) {
    Frame& in = pool[i % pool_size];
    in.frame_id = i;  // vary per call so droplet stages resample the field
    auto t0 = clock::now();
    Frame out = apply_chain(in, stage);
    auto t1 = clock::now();
    samples_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    // Keep the optimizer from deleting the call.
    if (!out.pixels.empty() && out.pixels[0] == 0xA5) in.pixels[0] ^= 1;
  }
  return latency_stats_from_us(std::move(samples_us));
}

namespace {

double require_number(const ordered_json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError("chain config: \"" + key + "\" must be a number");
  return v.get<double>();
}

std::uint8_t require_u8(const ordered_json& v, const std::string& key) {
  if (!v.is_number_integer()) {
    throw ParseError("chain config: \"" + key + "\" must be an integer");
  }
  auto n = v.get<std::int64_t>();
  if (n < 0 || n > 255) {
    throw ParseError("chain config: \"" + key + "\" must be in [0, 255]");
  }
  return static_cast<std::uint8_t>(n);
}

StageConfig parse_stage(const ordered_json& obj) {
  if (!obj.is_object()) throw ParseError("chain config: stage must be an object");
  auto type_it = obj.find("type");
  if (type_it == obj.end() || !type_it->is_string()) {
    throw ParseError("chain config: stage missing string \"type\"");
  }
  const std::string type = type_it->get<std::string>();

  if (type == "dim") {
    DimConfig cfg;
    bool have_k = false;
    for (const auto& [key, value] : obj.items()) {
      if (key == "type") continue;
      if (key == "k_dim") {
        cfg.k_dim = require_number(value, key);
        have_k = true;
      } else {
        throw ParseError("chain config: unknown key \"" + key + "\" in dim stage");
      }
    }
    if (!have_k) throw ParseError("chain config: dim stage requires \"k_dim\"");
    validate(cfg);
    return cfg;
  }
  if (type == "droplets") {
    DropletConfig cfg;
    bool have_k = false;
    for (const auto& [key, value] : obj.items()) {
      if (key == "type") continue;
      if (key == "k_droplet") {
        cfg.k_droplet = require_number(value, key);
        have_k = true;
      } else if (key == "fog_coef") {
        cfg.fog_coef = require_number(value, key);
      } else if (key == "density") {
        cfg.density = require_number(value, key);
      } else if (key == "radius_jitter") {
        cfg.radius_jitter = require_number(value, key);
      } else if (key == "gray_low") {
        cfg.gray_low = require_u8(value, key);
      } else if (key == "gray_high") {
        cfg.gray_high = require_u8(value, key);
      } else {
        throw ParseError("chain config: unknown key \"" + key + "\" in droplets stage");
      }
    }
    if (!have_k) throw ParseError("chain config: droplets stage requires \"k_droplet\"");
    validate(cfg);
    return cfg;
  }
  throw ParseError("chain config: unknown stage type \"" + type + "\"");
}

}  // namespace

AugmentationChain parse_chain_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("chain config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("chain config: top level must be an object");

  AugmentationChain chain;
  bool have_stages = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ParseError("chain config: \"seed\" must be a non-negative integer");
      }
      chain.seed = value.get<std::uint64_t>();
    } else if (key == "stages") {
      if (!value.is_array()) throw ParseError("chain config: \"stages\" must be an array");
      for (const auto& stage : value) chain.stages.push_back(parse_stage(stage));
      have_stages = true;
    } else {
      throw ParseError("chain config: unknown key \"" + key + "\"");
    }
  }
  if (!have_stages) throw ParseError("chain config: missing \"stages\"");
  return chain;
}

std::string chain_to_json(const AugmentationChain& chain) {
  ordered_json doc;
  doc["seed"] = chain.seed;
  doc["stages"] = ordered_json::array();
  for (const StageConfig& stage : chain.stages) {
    ordered_json s;
    if (const auto* dim = std::get_if<DimConfig>(&stage)) {
      s["type"] = "dim";
      s["k_dim"] = dim->k_dim;
    } else {
      const auto& d = std::get<DropletConfig>(stage);
      s["type"] = "droplets";
      s["k_droplet"] = d.k_droplet;
      s["fog_coef"] = d.fog_coef;
      s["density"] = d.density;
      s["radius_jitter"] = d.radius_jitter;
      s["gray_low"] = d.gray_low;
      s["gray_high"] = d.gray_high;
    }
    doc["stages"].push_back(std::move(s));
  }
  return doc.dump(2) + "\n";
}

AugmentationChain load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open chain config " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_chain_json(text);
}

}  // namespace wxaug

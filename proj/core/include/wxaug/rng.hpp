#pragma once

#include <cstdint>
#include <span>

namespace wxaug {

/// Finalizer of the SplitMix64 generator (Vigna, 2015). Full-avalanche
/// 64-bit mixing; also used as the project-wide seed-derivation hash.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Deterministic seed derivation: absorbs one 64-bit value into a seed.
/// stage_seed(chain, frame, stage) and sweep repeat seeds are all built
/// from chains of this function, so any implementation of mix64 + this
/// formula reproduces every random draw in the pipeline.
constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64(h ^ (mix64(v) + 0x9E3779B97F4A7C15ULL));
}

/// SplitMix64: the single PRNG behind every stochastic draw in this
/// project. Chosen over std::mt19937 + <random> distributions because the
/// standard distributions are not bit-portable across implementations;
/// the mappings below are fixed here and are part of the output contract.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1): top 53 bits of the next output.
  constexpr double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept {
    return lo + next_double() * (hi - lo);
  }

  /// Uniform integer in [lo, hi], inclusive. Plain modulo reduction: the
  /// tiny bias is irrelevant here and determinism is the whole point.
  constexpr std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
    return lo + next_u64() % (hi - lo + 1);
  }

  void fill_bytes(std::span<std::uint8_t> out) noexcept {
    std::size_t i = 0;
    while (i < out.size()) {
      std::uint64_t v = next_u64();
      for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
        out[i] = static_cast<std::uint8_t>(v >> (8 * b));
      }
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace wxaug

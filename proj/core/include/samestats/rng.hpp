#pragma once

#include <cstdint>
#include <random>

namespace samestats {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `master`:
///   splitmix64(master ^ ((index + 1) * 0x9E3779B97F4A7C15)).
/// Streams depend only on (master, index), never on scheduling.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seedable 64-bit generator (std::mt19937_64) with portable conversions.
/// The standard distributions are implementation-defined, so the
/// conversions to doubles and bounded integers are spelled out here to make
/// samples bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t master, std::uint64_t index) {
    return Rng(derive_stream_seed(master, index));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace samestats

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace selftaught {

/// Seedable random stream with platform-independent variates.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so the variates are derived here by hand:
/// uniform01() takes the top 53 bits of one engine output, normal() uses
/// Box-Muller on two uniforms and caches nothing (exactly two engine draws
/// per normal). That keeps a seed's transcript identical across libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  /// Standard normal variate.
  double normal() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent per-run seeds.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replicate `run_id` under `base_seed`. Depends only on the pair,
/// so runs can execute in any order.
constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_id) {
  return mix_seed(mix_seed(base_seed) ^ mix_seed(run_id + 0x5851f42d4c957f2dULL));
}

}  // namespace selftaught

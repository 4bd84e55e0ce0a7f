#pragma once

#include <cstdint>
#include <random>

namespace excesslab {

/// splitmix64 finalizer; used to derive independent substreams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random source. Every trial or restart owns one, derived
/// from (seed, index), so results never depend on the worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
  }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double exponential() {
    return std::exponential_distribution<double>(1.0)(engine_);
  }
  double normal() { return std::normal_distribution<double>()(engine_); }
  bool bernoulli(double prob) { return uniform() < prob; }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace excesslab

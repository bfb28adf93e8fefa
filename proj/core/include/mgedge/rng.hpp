#pragma once

#include <cstdint>

namespace mgedge {

// splitmix64 finalizer; also used as the mixing hash for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// Seed for child stream `stream` of `root`. Pure function of its inputs, so
// streams can be created in any order and on any thread.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return mix64(root ^ mix64(kGoldenGamma * (stream + 1)));
}

// Counter-based splittable PRNG (splitmix64). Each agent owns one stream, so
// a run's outcome does not depend on the order agents are iterated or on how
// runs are scheduled across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer in [0, bound), bound > 0. Lemire's method with rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  int uniform_int(int n) { return static_cast<int>(next_below(static_cast<std::uint64_t>(n))); }

 private:
  std::uint64_t state_;
};

}  // namespace mgedge

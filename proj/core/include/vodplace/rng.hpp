#pragma once

#include <cstdint>
#include <random>

namespace vodplace {

// Seedable random stream with a fixed stream-splitting rule: every consumer
// of randomness (topology generation, request assignment, rounding, ...)
// derives its own child stream from the run seed and a stream tag, so adding
// a new consumer never perturbs the draws of an existing one.
//
// The engine is std::mt19937_64, whose output sequence is fully specified by
// the standard, and all derived draws below go through our own reductions,
// so results are identical across platforms and standard libraries.
class Rng {
 public:
  enum class Stream : std::uint64_t {
    generic = 0,
    topology = 1,
    requests = 2,
    rounding = 3,
    placement = 4,
    montecarlo = 5,
  };

  Rng(std::uint64_t seed, Stream stream)
      : engine_(mix(seed, static_cast<std::uint64_t>(stream))) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n), n >= 1. Rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t min = (-n) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < min);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
    // splitmix64 finalizer applied twice over seed and tag
    auto fin = [](std::uint64_t z) {
      z += 0x9e3779b97f4a7c15ULL;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    return fin(fin(seed) ^ (tag * 0xda942042e4dd58b5ULL));
  }

  std::mt19937_64 engine_;
};

}  // namespace vodplace

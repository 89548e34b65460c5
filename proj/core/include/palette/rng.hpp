#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace palette {

// Seeded pseudorandom source. Identical seeds give identical streams on every
// platform: uniform() is built from raw engine output, not from a standard
// distribution.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 1) : engine_(mix(seed)), seed_(seed) {}

  // Independent stream for trial `index` of an experiment seeded with `seed`.
  // Results of a parallel experiment therefore do not depend on how trials are
  // split across workers.
  static RngStream derive(std::uint64_t seed, std::uint64_t index) {
    return RngStream(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

 private:
  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace palette

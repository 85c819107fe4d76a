#pragma once

#include <cstdint>
#include <random>

namespace gamedyn {

/// Seedable generator with a pinned algorithm so traces replay identically
/// across platforms and standard libraries. Bounded draws use rejection
/// sampling rather than std::uniform_int_distribution, whose output is
/// implementation-defined.
class SeededRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, index); used to split work by index.
  static SeededRng derive(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    SeededRng rng(0);
    rng.engine_.seed(seq);
    return rng;
  }

  std::uint64_t next() { return engine_(); }

  /// Unbiased draw from {0, ..., n-1}.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gamedyn

#pragma once

#include <cstdint>

namespace nullwave {

/// Counter-based generator: every draw is a pure function of (seed, stream,
/// counter), so parallel workers reproduce the serial sequence exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter, std::uint64_t stream = 0) const {
    std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ULL * (counter + 1)) ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    // second round decorrelates nearby counters
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t counter, std::uint64_t stream = 0) const {
    return static_cast<double>(bits(counter, stream) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace nullwave

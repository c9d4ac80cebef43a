#pragma once

#include <cstdint>

namespace twinterf {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based stream: value i depends only on (seed, event, stream, i),
/// so events can be generated in any order or in parallel.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t event, std::uint64_t stream);

  std::uint64_t at(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t key_;
};

}  // namespace twinterf

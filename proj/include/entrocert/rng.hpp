#pragma once

#include <cstdint>

namespace entrocert {

// Stateless 64-bit finalizer (splitmix64 output function).
std::uint64_t mix64(std::uint64_t x);

// Stream derivation rule used everywhere randomness is consumed:
//   stream_seed(master, index) = mix64(master ^ mix64(index + 1))
// Every independent consumer (simulation round, optimizer restart,
// grid point) derives its own stream from a master seed and a counter,
// so results do not depend on evaluation order and streams never
// overlap for distinct counters.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

// Minimal seedable generator backing all Monte Carlo sampling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (one value per call).
  double next_gaussian();

 private:
  std::uint64_t state_;
};

}  // namespace entrocert

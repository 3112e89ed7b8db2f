#pragma once

#include <cstdint>

namespace rivalry {

// SplitMix64 finalizer. All randomness in the library is counter-based:
// a draw is a pure function of (seed, counter, salt), so any draw is
// addressable without generator state and parallel workers never contend.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

// Top 53 bits, mapped to [0, 1).
constexpr double to_unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Replicate k of sweep grid point j always runs with this seed, so one base
// seed reproduces an entire sweep.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t j,
                                    std::uint64_t k) {
  return hash_mix(base, j, k);
}

}  // namespace rivalry

#pragma once

#include <cstdint>

namespace kolmo {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless uniform draws keyed by (seed, stream, index).  Sample i is a
/// pure function of the key, so scans stay deterministic under any parallel
/// schedule and growing a scan keeps its prefix.
class HashRng {
public:
  HashRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream ^ 0x6a09e667f3bcc909ULL))) {}

  double uniform01(std::uint64_t index) const {
    return static_cast<double>(splitmix64(key_ ^ splitmix64(index)) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t index, double a, double b) const {
    return a + (b - a) * uniform01(index);
  }

private:
  std::uint64_t key_;
};

}  // namespace kolmo

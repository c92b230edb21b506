#pragma once

#include <cstdint>
#include <random>

namespace tbechart {

/// Deterministic uniform stream. Substreams are derived from a master seed
/// by a counter-based SplitMix64 hash, so the stream assigned to a task
/// depends only on its index, never on scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream for task `index` under `master_seed`.
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(mix(master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL));
  }

  /// Chains another key into a seed; used to keep independent simulation
  /// blocks on disjoint streams.
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t key) {
    return mix(seed + (key + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1): 53-bit mantissa, offset half a
  /// step so 0 and 1 are never returned.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace tbechart

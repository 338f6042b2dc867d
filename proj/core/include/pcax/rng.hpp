#pragma once

#include <cstdint>
#include <random>

namespace pcax {

/// Deterministic random stream used everywhere randomness is needed.
///
/// Built on std::mt19937_64, whose integer output is fully specified by the
/// standard, with explicit bit-to-double mapping and an own Box-Muller
/// transform instead of the std distributions (their output is
/// implementation-defined and would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) using the top 53 bits of the engine output.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate (Box-Muller, pair cached).
  double gaussian();

  /// Deterministically derives an independent sub-stream seed from a master
  /// seed and up to two indices (splitmix64 mixing). Realizations seeded this
  /// way may run in any order, or in parallel, with identical results.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t a,
                              std::uint64_t b = 0);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pcax

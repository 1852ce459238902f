#pragma once

#include <cstdint>

namespace sqc {

/// Deterministic counter-based random stream (splitmix64). Substreams derived
/// via substream(i) depend only on the base seed and i, never on how much the
/// parent has consumed, so work can be partitioned across substreams and
/// reduced in any order with bit-identical results.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : base_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Exact for the power-of-two n used here.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t derive_seed(std::uint64_t index) const {
    return finalize(finalize(base_ ^ (0x9E3779B97F4A7C15ULL * (index + 1))) + index);
  }

  RngStream substream(std::uint64_t index) const { return RngStream(derive_seed(index)); }

  std::uint64_t seed() const { return base_; }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t state_;
};

}  // namespace sqc

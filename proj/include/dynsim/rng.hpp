#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace dynsim {

/// Deterministic random source used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified
/// by the standard, so identical seeds give identical streams on every
/// platform. The std::*_distribution adaptors are NOT portable, so all
/// draws below are implemented directly on the raw 64-bit output:
///   - uniform():      53-bit mantissa draw in [0,1)
///   - uniform_int(n): rejection sampling, unbiased
///   - normal():       Box-Muller, two fresh uniforms per call, no cached
///                     spare (keeps serialized state == engine state)
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Requires n >= 1.
  uint64_t uniform_int(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(uniform_int(static_cast<uint64_t>(hi - lo + 1)));
  }

  double normal(double mu = 0.0, double sigma = 1.0);

  /// Derive an independent child generator (seeded from this stream).
  Rng child() { return Rng(next_u64()); }

  /// Engine state as text ("v0 v1 ... v312"); format is specified by the
  /// C++ standard, so it is portable across implementations.
  std::string serialize_state() const;
  void deserialize_state(const std::string& text);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dynsim

#pragma once

#include <cstdint>

namespace dmc {

// splitmix64: tiny seedable generator with platform-independent output.
// std::mt19937 + distributions would not give bit-identical streams across
// standard libraries, and runs here must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on [0,1) at 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1, via rejection (no modulo bias)
  uint64_t next_below(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

 private:
  uint64_t state_;
};

// Stable per-trial seed stream: trial i of master seed s gets its own state.
inline uint64_t derive_seed(uint64_t seed, uint64_t i) {
  Rng r(seed ^ (0xD1B54A32D192ED03ULL * (i + 1)));
  return r.next_u64();
}

}  // namespace dmc

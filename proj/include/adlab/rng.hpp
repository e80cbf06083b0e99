#pragma once

// All randomness in the project flows through this one generator so that any
// run is reproducible from a single 64-bit seed. The algorithm is SplitMix64
// (Steele-Lea-Vigna finalizer); stage-scoped child generators are derived by
// folding an FNV-1a hash of the stage label into the parent seed, so adding a
// stage never perturbs the streams of existing stages.

#include <cstdint>
#include <string_view>

namespace adlab {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be nonzero.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool next_bool() { return (next() & 1) != 0; }

  // Child generator for a named stage; independent of draws made on *this.
  SplitMix64 split(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return SplitMix64(state_ ^ h);
  }

 private:
  std::uint64_t state_;
};

}  // namespace adlab

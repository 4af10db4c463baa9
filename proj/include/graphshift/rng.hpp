#pragma once

#include <cstdint>

namespace graphshift {

// splitmix64 finalizer (Steele, Lea & Flood; public domain reference
// implementation). Bit-exact on every platform, which is what makes the
// generator outputs reproducible across machines.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

// Counter-based splitmix64 stream. Entry streams are derived by hashing
// (seed, i, j), so generation order and parallel row-blocking cannot change
// the sampled values.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() { return mix64(state_++); }

  // Uniform draw on the closed interval [0, 1]: 53 random bits over 2^53 - 1.
  double next_unit_closed() {
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740991.0);
  }

 private:
  std::uint64_t state_;
};

}  // namespace graphshift

#pragma once

// Seeded randomness shared by every simulation path.
//
// Generator: std::mt19937_64 (the 64-bit Mersenne Twister, MT19937-64) seeded
// with a single 64-bit value. Uniform doubles take the top 53 bits of one
// output word: (word >> 11) * 2^-53. Integer indices in [0, n) are
// floor(uniform() * n). Both conversions are fixed here rather than left to
// <random> distributions so that ports in other languages reproduce streams.
//
// Replicate seeds come from derive_seed(master, cell, replicate):
//   s0 = splitmix64(master)
//   s1 = splitmix64(s0 ^ cell)
//   s  = splitmix64(s1 ^ replicate)
// where splitmix64 is the standard SplitMix64 finalizer
//   z = x + 0x9E3779B97F4A7C15
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)

#include <cstddef>
#include <cstdint>
#include <random>

namespace acqf {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                    std::uint64_t replicate) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ cell) ^ replicate);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acqf

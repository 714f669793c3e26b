#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace dagsched {

// SplitMix64 (Steele, Lea & Flood's mixer, as used to seed xoshiro).
//
// Every stochastic operation in the library draws from this generator so
// that results are reproducible bit-for-bit from a 64-bit seed, on any
// platform. std::mt19937_64 would also be portable, but the standard
// distributions on top of it are not specified identically across library
// implementations, so we keep the whole sampling path in-house.
//
// Seeding rule: the state is the seed, verbatim.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = next();
    while (r < threshold) {
      r = next();
    }
    return r % bound;
  }

  // Inclusive integer range [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Fisher-Yates; consumes no draws for size < 2.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::uint64_t state_;
};

// Folds a list of words into one seed (FNV-1a over their little-endian
// bytes). Used to give benchmark cells and per-algorithm tie-break streams
// independent, reproducible seeds.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xffull;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

}  // namespace dagsched

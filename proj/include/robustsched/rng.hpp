#pragma once
// Deterministic randomness. Everything that must reproduce bit for bit
// (instance generation, scenario sampling, search runs) draws from SplitMix64
// with hand-rolled bounded draws; std::uniform_int_distribution is not
// portable across standard library implementations.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace robustsched {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// SplitMix64 (Steele, Lea, Flood). One word of state, full 64-bit output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Seed of child stream #index of a base seed. Instances, benchmark cells and
// search runs each get their own stream so draws never interleave.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Unbiased draw from [lo, hi], rejection-sampled.
inline std::int64_t uniform_int(SplitMix64& g, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t m =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (m == 0) return static_cast<std::int64_t>(g.next());  // full range
  const std::uint64_t rem = (std::uint64_t{0} - m) % m;    // 2^64 mod m
  std::uint64_t x = g.next();
  if (rem != 0) {
    const std::uint64_t limit = std::uint64_t{0} - rem;  // top multiple of m
    while (x >= limit) x = g.next();
  }
  return lo + static_cast<std::int64_t>(x % m);
}

// Fisher-Yates with our own draws, same portability reason as above.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        uniform_int(g, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xCBF29CE484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace robustsched

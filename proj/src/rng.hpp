#pragma once

#include <cstdint>

namespace degwalk {

// splitmix64 step; used to expand seeds and to derive per-replicate streams.
inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** 1.0. Hand-rolled so that draws are identical across
// compilers and standard libraries; std:: distributions are not portable.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) { reseed(seed); }

  void reseed(uint64_t seed) {
    uint64_t x = seed;
    for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound), bound > 0. Rejection from the top range.
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  uint64_t s_[4];
};

// Seed for stream (a, b) under a master seed; independent of scheduling order.
inline uint64_t stream_seed(uint64_t master, uint64_t a, uint64_t b) {
  uint64_t x = master;
  uint64_t h = splitmix64(x);
  x = h ^ (a * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
  h = splitmix64(x);
  x = h ^ (b * 0xbf58476d1ce4e5b9ULL + 0x1ce4e5b9ULL);
  return splitmix64(x);
}

}  // namespace degwalk

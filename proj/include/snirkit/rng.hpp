#pragma once

// Deterministic random number generator. All stochastic code in the library
// draws from this engine so that a given seed reproduces the same bytes on
// every run. The core is xoshiro256++ seeded through splitmix64; normals use
// Box-Muller (no rejection loop), integer draws use rejection against the
// largest unbiased range. Identical seeds give identical streams regardless
// of compiler flags or thread count, because no std:: distribution objects
// are involved.

#include <cmath>
#include <cstdint>

namespace snirkit {

namespace detail {
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix64(sm);
  }

  // Stream for replication `idx` under a master seed; mixing happens in the
  // constructor, so adjacent indices give unrelated streams.
  static Rng for_replication(uint64_t master_seed, uint64_t idx) {
    return Rng(master_seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1)));
  }

  uint64_t next_u64() {
    const uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    // Guard against log(0); pushes u1 into (0,1].
    u1 = 1.0 - u1;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace snirkit

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace ransim {

// Deterministic xoshiro256++ stream with self-contained distributions.
// std::<distribution> implementations differ across standard libraries, so
// every draw here is spelled out to keep seeded runs byte-reproducible.
class RandomStream {
 public:
  RandomStream() : RandomStream(0x9e3779b97f4a7c15ULL) {}

  explicit RandomStream(std::uint64_t seed) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
    cached_gaussian_valid_ = false;
  }

  // Derives an independent stream for a named concern (mobility, fading, ...).
  static RandomStream substream(std::uint64_t master, std::uint64_t stream_id) {
    std::uint64_t x = master;
    std::uint64_t a = splitmix64(x);
    x ^= (stream_id + 0x9e3779b97f4a7c15ULL) * 0xbf58476d1ce4e5b9ULL;
    std::uint64_t b = splitmix64(x);
    return RandomStream(a ^ (b << 1));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Multiply-shift rejection-free map; bias is negligible for n << 2^64.
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Marsaglia polar method; caches the second deviate.
  double gaussian() {
    if (cached_gaussian_valid_) {
      cached_gaussian_valid_ = false;
      return cached_gaussian_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double r = std::sqrt(-2.0 * std::log(s) / s);
    cached_gaussian_ = v * r;
    cached_gaussian_valid_ = true;
    return u * r;
  }

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

  // Unit-mean exponential (Rayleigh power gain).
  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  // Knuth-style product method, adequate for the small means used here.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t count = 0;
    double remaining = mean;
    // Split large means to keep exp(-mean) away from underflow.
    while (remaining > 30.0) {
      count += poisson_knuth(30.0);
      remaining -= 30.0;
    }
    return count + poisson_knuth(remaining);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t count = 0;
    double product = uniform();
    while (product > limit) {
      ++count;
      product *= uniform();
    }
    return count;
  }

  std::uint64_t state_[4] = {};
  double cached_gaussian_ = 0.0;
  bool cached_gaussian_valid_ = false;
};

// Stream ids for the per-concern RNGs split from one master seed.
enum class RngStream : std::uint64_t {
  kMobility = 1,
  kFading = 2,
  kTraffic = 3,
  kNoise = 4,
  kPolicy = 5,
};

inline RandomStream make_stream(std::uint64_t master_seed, RngStream which) {
  return RandomStream::substream(master_seed, static_cast<std::uint64_t>(which));
}

}  // namespace ransim

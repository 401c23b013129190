#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace specsim {

// splitmix64 step. Used for seed expansion and for hashing seed words;
// self-contained so streams are reproducible across platforms and compilers.
inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed derivation: feed each word through splitmix64 and fold
// into the running hash. mix_seed({master, point, trial}) gives every trial
// its own stream, and individual trials can be re-run in isolation.
inline uint64_t mix_seed(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x243f6a8885a308d3ULL;
  for (uint64_t w : words) {
    uint64_t s = h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    h = splitmix64_next(s);
  }
  return h;
}

// xoshiro256** generator. One instance per trial; never shared across threads.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64_next(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform index in [0, n); n must be >= 1.
  size_t uniform_index(size_t n) {
    return static_cast<size_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  // Draw from a probability vector. The final index absorbs any rounding
  // slack, so vectors summing to 1 within a few ulps are safe.
  size_t categorical(std::span<const double> probs) {
    const double u = next_double();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

}  // namespace specsim

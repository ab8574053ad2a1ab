#pragma once

#include <cstdint>
#include <vector>

namespace sanet {

// SplitMix64 stream. Used for every seeded draw in the project (parameter
// init, dropout masks, scene synthesis, episode sampling, batch shuffles)
// so that outputs are reproducible across platforms, not just across runs.
// std::uniform_* distributions are implementation-defined, hence avoided.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of randomness.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), n > 0. Multiplication method keeps this exact
  // and branch-free.
  uint64_t uniform_int(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

// Derives an independent stream seed from a base seed and a stream index.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  Rng g(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  return g.next_u64();
}

// FNV-1a over a string, used to give each named parameter array its own
// deterministic init stream independent of enumeration order.
inline uint64_t fnv1a(const char* s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace sanet

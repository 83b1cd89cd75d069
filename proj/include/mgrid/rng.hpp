#pragma once

#include <cstdint>
#include <vector>

namespace mgrid {

// splitmix64; used to derive substream seeds from (seed, tags...).
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with fully deterministic, platform-independent output.
// Substreams are derived by hashing integer tags into the seed, so parallel
// consumers (per node, per scenario) draw identical values regardless of
// scheduling.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  Rng substream(uint64_t tag) const {
    uint64_t sm = s_[0] ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
    sm ^= s_[2] + 0xd1342543de82ef95ULL;
    return Rng(splitmix64(sm));
  }
  Rng substream(uint64_t a, uint64_t b) const {
    return substream(a).substream(b);
  }
  Rng substream(uint64_t a, uint64_t b, uint64_t c) const {
    return substream(a).substream(b).substream(c);
  }

  uint64_t next_u64() {
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

  // Uniform in [0, 1).
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

  // Index sampled proportionally to non-negative weights.
  int pick_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01() * total;
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return int(i);
    }
    return int(weights.size()) - 1;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace mgrid

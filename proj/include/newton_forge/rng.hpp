#pragma once

#include "vec.hpp"

#include <cstdint>

namespace nf {

// Deterministic seeded generator (splitmix64). All sampled checks and CLI
// experiments draw from this, never from std::random_device, so identical
// seeds give identical runs on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

  // uniform in [lo, hi]
  int64_t range(int64_t lo, int64_t hi) {
    return lo + (int64_t)below((uint64_t)(hi - lo + 1));
  }

  bool coin() { return next() & 1; }

  // random rational with numerator in [-num_max, num_max] and denominator
  // in [1, den_max]
  Rat rat(int64_t num_max, int64_t den_max = 8) {
    return Rat(Int(range(-num_max, num_max)), Int(range(1, den_max)));
  }

  Rat rat_nonneg(int64_t num_max, int64_t den_max = 8) {
    return Rat(Int(range(0, num_max)), Int(range(1, den_max)));
  }

  // rational in [0,1]
  Rat rat01(int64_t den_max = 64) {
    Int d(range(1, den_max));
    return Rat(Int(range(0, (int64_t)d.convert_to<int64_t>())), d);
  }

  RatVec vec(int dim, int64_t num_max, int64_t den_max = 8) {
    RatVec v(dim);
    for (auto& x : v) x = rat(num_max, den_max);
    return v;
  }

  RatVec vec_nonneg(int dim, int64_t num_max, int64_t den_max = 8) {
    RatVec v(dim);
    for (auto& x : v) x = rat_nonneg(num_max, den_max);
    return v;
  }

 private:
  uint64_t state_;
};

inline uint64_t default_seed() {
  if (const char* env = std::getenv("NEWTON_FORGE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 20240901ULL;
}

}  // namespace nf

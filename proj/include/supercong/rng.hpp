#pragma once

#include <numeric>

#include "supercong/rational.hpp"
#include "supercong/u128.hpp"

namespace supercong {

// splitmix64; self-contained so sweeps reproduce bit-for-bit regardless of
// the standard library's distribution implementations.
class SplitMix {
 public:
  explicit SplitMix(u64 seed) : x_(seed) {}

  u64 next() {
    u64 z = (x_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi] by rejection
  i64 uniform(i64 lo, i64 hi) {
    u64 span = u64(hi - lo) + 1;
    u64 limit = UINT64_MAX - UINT64_MAX % span;
    u64 v;
    do {
      v = next();
    } while (v >= limit);
    return lo + i64(v % span);
  }

 private:
  u64 x_;
};

// Random rational u/v with |u| <= 50, 1 <= v <= 20, gcd(v, p) = 1.
inline Rational random_parameter(SplitMix& rng, u64 p) {
  i64 u = rng.uniform(-50, 50);
  i64 v = rng.uniform(1, 20);
  while (p != 0 && u64(v) % p == 0) v = rng.uniform(1, 20);
  Rational q(static_cast<long>(u), static_cast<long>(v));
  q.canonicalize();
  return q;
}

}  // namespace supercong

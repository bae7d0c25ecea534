#pragma once

#include <cstdint>

#include "supercong/errors.hpp"
#include "supercong/u128.hpp"

namespace supercong {

// Deterministic Miller-Rabin; the base set is exact for n < 3.3e24.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u128 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// An odd prime p > 3 together with a working precision exponent k and the
// powers p^0..p^4. Immutable after construction; shared read-only across
// workers.
class ModulusContext {
 public:
  static constexpr int max_precision = 4;

  ModulusContext(u64 p, int k) : p_(p), k_(k) {
    if (k < 1 || k > max_precision)
      throw usage_error("precision exponent must be in 1..4");
    if (p <= 3 || p > 3'000'000'000ull)
      throw usage_error("p must be an odd prime > 3 (and < 3e9)");
    if (!is_prime(p)) throw usage_error("p is not prime");
    powers_[0] = 1;
    for (int i = 1; i <= max_precision; ++i) powers_[i] = powers_[i - 1] * p;
  }

  u64 p() const { return p_; }
  int k() const { return k_; }

  u128 pow(int e) const {
    if (e < 0 || e > max_precision)
      throw precision_exhausted("p^e with e out of range");
    return powers_[e];
  }

 private:
  u64 p_;
  int k_;
  u128 powers_[max_precision + 1];
};

// Legendre symbol by Euler's criterion.
inline int legendre(i64 n, u64 p) {
  i64 r = n % i64(p);
  if (r < 0) r += i64(p);
  if (r == 0) return 0;
  u128 v = powmod(u128(r), (p - 1) / 2, p);
  return v == 1 ? 1 : -1;
}

}  // namespace supercong

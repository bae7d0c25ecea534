#pragma once

#include <cstdint>
#include <string>

namespace supercong {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  char buf[40];
  int pos = 40;
  while (v > 0) {
    buf[--pos] = char('0' + int(v % 10));
    v /= 10;
  }
  return std::string(buf + pos, buf + 40);
}

inline std::string i128_to_string(i128 v) {
  if (v < 0) return "-" + u128_to_string(u128(-v));
  return u128_to_string(u128(v));
}

// (a * b) % m, correct for any m < 2^127. Fast path while operands stay
// below 64 bits (their product fits in u128); shift-add otherwise.
inline u128 mulmod(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  if (a <= UINT64_MAX && b <= UINT64_MAX) return (a * b) % m;
  if (b > a) {
    u128 t = a;
    a = b;
    b = t;
  }
  u128 r = 0;
  while (b > 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

inline u128 powmod(u128 base, u128 exp, u128 m) {
  u128 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Extended Euclid; returns gcd(a, m) and sets inv so that a*inv == gcd (mod m).
inline u128 egcd_inverse(u128 a, u128 m, u128& inv) {
  i128 old_r = i128(a % m), r = i128(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  i128 x = old_s % i128(m);
  if (x < 0) x += i128(m);
  inv = u128(x);
  return u128(old_r);
}

}  // namespace supercong

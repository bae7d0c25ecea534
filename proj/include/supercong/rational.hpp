#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "supercong/errors.hpp"
#include "supercong/u128.hpp"

namespace supercong {

// Exact reduced fraction; mpq_class keeps gcd(num, den) = 1 and den >= 1
// canonical. This is the input form of the parameter a and the number type
// of the brute-force oracle.
using Rational = mpq_class;

inline mpz_class mpz_from_u128(u128 v) {
  mpz_class hi{static_cast<unsigned long>(v >> 64)};
  mpz_class lo{static_cast<unsigned long>(v)};
  return mpz_class((hi << 64) + lo);
}

inline u128 mpz_to_u128(const mpz_class& z) {
  mpz_class lo = z & mpz_class(UINT64_MAX);
  mpz_class hi = z >> 64;
  return (u128(hi.get_ui()) << 64) | u128(lo.get_ui());
}

// z mod m in [0, m), for m > 0 of up to 127 bits.
inline u128 mpz_mod_u128(const mpz_class& z, u128 m) {
  mpz_class mod = mpz_from_u128(m);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
  return mpz_to_u128(r);
}

// Accepts "n" or "n/d" with an optional leading minus; d must be positive.
inline Rational parse_rational(const std::string& s) {
  auto bad = [&] { throw usage_error("not a rational: '" + s + "'"); };
  if (s.empty()) bad();
  std::size_t i = 0;
  if (s[0] == '-') i = 1;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) bad();
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    if (slash + 1 >= s.size()) bad();
    for (std::size_t j = i; j < slash; ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) bad();
    for (std::size_t j = slash + 1; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) bad();
  } else {
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) bad();
  }
  Rational q;
  if (q.set_str(s, 10) != 0) bad();
  if (q.get_den() == 0) throw usage_error("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

inline bool is_p_integral(const Rational& q, u64 p) {
  return mpz_fdiv_ui(q.get_den().get_mpz_t(), p) != 0;
}

// Generalized binomial coefficient a(a-1)...(a-j+1)/j! over Q.
inline Rational binomial(const Rational& a, unsigned long j) {
  Rational r(1);
  Rational f(a);
  for (unsigned long i = 1; i <= j; ++i) {
    r *= f;
    r /= Rational(static_cast<long>(i));
    f -= 1;
  }
  return r;
}

inline mpz_class binomial_uiui(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rational rational_pow(const Rational& q, long e) {
  Rational r(1);
  Rational base = e >= 0 ? q : Rational(1) / q;
  unsigned long n = e >= 0 ? static_cast<unsigned long>(e)
                           : static_cast<unsigned long>(-e);
  for (; n > 0; --n) r *= base;
  return r;
}

}  // namespace supercong

#pragma once

#include <string>

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/rational.hpp"
#include "supercong/u128.hpp"

namespace supercong {

// A canonical integer in [0, p^e) carrying its own known-precision exponent
// e. Mixed-precision arithmetic silently degrades to the minimum, so
// precision loss stays auditable. All congruence checks are exact at a
// stated precision.
class Residue {
 public:
  Residue(const ModulusContext& ctx, u128 value, int e)
      : ctx_(&ctx), e_(e), value_(value % ctx.pow(e)) {
    if (e < 1 || e > ModulusContext::max_precision)
      throw precision_exhausted("residue precision out of range");
  }

  u128 value() const { return value_; }
  int precision() const { return e_; }
  const ModulusContext& ctx() const { return *ctx_; }
  u128 modulus() const { return ctx_->pow(e_); }
  bool is_zero() const { return value_ == 0; }

  std::string str() const { return u128_to_string(value_); }

  // Representative in [-p^e/2, p^e/2), for human diffing.
  i128 balanced() const {
    u128 m = modulus();
    if (value_ * 2 >= m) return i128(value_) - i128(m);
    return i128(value_);
  }

  Residue truncated(int e) const {
    if (e > e_) throw precision_exhausted("cannot raise residue precision");
    return Residue(*ctx_, value_ % ctx_->pow(e), e);
  }

  friend Residue operator+(const Residue& x, const Residue& y) {
    int e = joint_precision(x, y);
    u128 m = x.ctx_->pow(e);
    u128 v = x.value_ % m + y.value_ % m;
    if (v >= m) v -= m;
    return Residue(*x.ctx_, v, e);
  }

  friend Residue operator-(const Residue& x, const Residue& y) {
    int e = joint_precision(x, y);
    u128 m = x.ctx_->pow(e);
    u128 a = x.value_ % m, b = y.value_ % m;
    return Residue(*x.ctx_, a >= b ? a - b : a + m - b, e);
  }

  friend Residue operator*(const Residue& x, const Residue& y) {
    int e = joint_precision(x, y);
    u128 m = x.ctx_->pow(e);
    return Residue(*x.ctx_, mulmod(x.value_, y.value_, m), e);
  }

  Residue operator-() const {
    u128 m = modulus();
    return Residue(*ctx_, value_ == 0 ? 0 : m - value_, e_);
  }

  Residue inverse() const {
    u128 m = modulus();
    u128 inv;
    if (egcd_inverse(value_, m, inv) != 1)
      throw not_invertible("residue " + str() + " not invertible mod p^" +
                           std::to_string(e_));
    return Residue(*ctx_, inv, e_);
  }

  Residue pow(u64 exp) const {
    return Residue(*ctx_, powmod(value_, exp, modulus()), e_);
  }

  // Consumes one digit of precision.
  Residue divide_by_p() const {
    if (value_ % ctx_->p() != 0)
      throw not_divisible_by_p("residue " + str() + " not divisible by p");
    if (e_ < 2) throw precision_exhausted("divide_by_p at precision 1");
    return Residue(*ctx_, value_ / ctx_->p(), e_ - 1);
  }

  // Exact multiplication by p; gains one digit of precision.
  Residue times_p() const {
    if (e_ + 1 > ModulusContext::max_precision)
      throw precision_exhausted("times_p beyond p^4");
    return Residue(*ctx_, value_ * ctx_->p(), e_ + 1);
  }

 private:
  static int joint_precision(const Residue& x, const Residue& y) {
    if (x.ctx_->p() != y.ctx_->p())
      throw context_mismatch("residues from different primes");
    return x.e_ < y.e_ ? x.e_ : y.e_;
  }

  const ModulusContext* ctx_;
  int e_;
  u128 value_;
};

inline Residue embed(const ModulusContext& ctx, const mpz_class& n, int e) {
  if (e > ctx.k()) throw precision_exhausted("embed beyond context precision");
  return Residue(ctx, mpz_mod_u128(n, ctx.pow(e)), e);
}

inline Residue embed(const ModulusContext& ctx, i64 n, int e) {
  if (e > ctx.k()) throw precision_exhausted("embed beyond context precision");
  u128 m = ctx.pow(e);
  i128 v = i128(n) % i128(m);
  if (v < 0) v += i128(m);
  return Residue(ctx, u128(v), e);
}

// q.num * q.den^-1 mod p^e, defined for rational p-adic integers.
inline Residue embed(const ModulusContext& ctx, const Rational& q, int e) {
  if (e > ctx.k()) throw precision_exhausted("embed beyond context precision");
  if (!is_p_integral(q, ctx.p()))
    throw denominator_divisible_by_p("denominator of " +
                                     rational_to_string(q) +
                                     " divisible by p");
  Residue num = embed(ctx, mpz_class(q.get_num()), e);
  Residue den = embed(ctx, mpz_class(q.get_den()), e);
  return num * den.inverse();
}

// <a>_p: the unique integer in {0,...,p-1} congruent to a mod p.
inline u64 fractional_residue(const Rational& a, u64 p) {
  if (mpz_fdiv_ui(a.get_den().get_mpz_t(), p) == 0)
    throw denominator_divisible_by_p("denominator of " +
                                     rational_to_string(a) +
                                     " divisible by p");
  u64 num = mpz_fdiv_ui(a.get_num().get_mpz_t(), p);
  u64 den = mpz_fdiv_ui(a.get_den().get_mpz_t(), p);
  u128 inv;
  egcd_inverse(den, p, inv);
  return u64(mulmod(num, inv, p));
}

// t = (a - <a>_p)/p as an exact rational; a p-adic integer.
inline Rational tail_rational(const Rational& a, u64 p) {
  Rational t = a - Rational(static_cast<long>(fractional_residue(a, p)));
  t /= Rational(static_cast<long>(p));
  return t;
}

// t as a residue. One digit is consumed by the division, so the result
// precision is k-1.
inline Residue tail_t(const Rational& a, const ModulusContext& ctx) {
  if (ctx.k() < 2) throw precision_exhausted("tail_t needs k >= 2");
  u64 m = fractional_residue(a, ctx.p());
  Residue r = embed(ctx, a, ctx.k()) - embed(ctx, i64(m), ctx.k());
  return r.divide_by_p();
}

}  // namespace supercong

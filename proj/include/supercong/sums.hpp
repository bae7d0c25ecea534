#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/rational.hpp"
#include "supercong/residue.hpp"
#include "supercong/u128.hpp"

namespace supercong {

// Weight families applied to binom(a,k) binom(-1-a,k):
//   One          1
//   TimesK       k
//   Inv2kPlus1   1/(2k+1)                      denominator hits p at (p-1)/2
//   Inv2kMinus1  1/(2k-1)                      denominator hits p at (p+1)/2
//   InvK         1/k, k >= 1
//   AffineOverOdd  (a+k+1)/(2k+1)              denominator hits p at (p-1)/2
//   MixedL42     ((2a(a+1)+1)k - a(a+1))/(4k^2-1)   hits p at both spots
enum class Weight {
  One,
  TimesK,
  Inv2kPlus1,
  Inv2kMinus1,
  InvK,
  AffineOverOdd,
  MixedL42
};

// The four central-binomial ratio families binom(2k,k)^2/16^k,
// binom(2k,k)binom(3k,k)/27^k, binom(2k,k)binom(4k,2k)/64^k,
// binom(3k,k)binom(6k,3k)/432^k; each equals the central product
// binom(a,k)binom(-1-a,k) at the listed parameter.
enum class Family { F16, F27, F64, F432 };

inline Rational family_parameter(Family f) {
  switch (f) {
    case Family::F16: return Rational(-1, 2);
    case Family::F27: return Rational(-1, 3);
    case Family::F64: return Rational(-1, 4);
    default: return Rational(-1, 6);
  }
}

inline u64 family_base(Family f) {
  switch (f) {
    case Family::F16: return 16;
    case Family::F27: return 27;
    case Family::F64: return 64;
    default: return 432;
  }
}

namespace detail {

inline bool weight_has_p_denominator(Weight w) {
  return w == Weight::Inv2kPlus1 || w == Weight::Inv2kMinus1 ||
         w == Weight::AffineOverOdd || w == Weight::MixedL42;
}

inline std::vector<u64> weight_special_spots(Weight w, u64 p) {
  switch (w) {
    case Weight::Inv2kPlus1:
    case Weight::AffineOverOdd: return {(p - 1) / 2};
    case Weight::Inv2kMinus1: return {(p + 1) / 2};
    case Weight::MixedL42: return {(p - 1) / 2, (p + 1) / 2};
    default: return {};
  }
}

// Weight coefficients at one working precision.
struct WeightEval {
  const ModulusContext* ctx;
  int e;
  Residue a_res, c1, c0;  // a, 2a(a+1)+1, a(a+1)

  WeightEval(const ModulusContext& ctx_, int e_, const Rational& a_)
      : ctx(&ctx_),
        e(e_),
        a_res(embed(ctx_, a_, e_)),
        c1(embed(ctx_, Rational(2) * a_ * (a_ + 1) + 1, e_)),
        c0(embed(ctx_, a_ * (a_ + 1), e_)) {}

  // Factor for an ordinary k (weight denominator coprime to p); nullopt for
  // the skipped k = 0 of InvK.
  std::optional<Residue> factor(Weight w, u64 k) const {
    switch (w) {
      case Weight::One: return Residue(*ctx, 1, e);
      case Weight::TimesK: return embed(*ctx, i64(k), e);
      case Weight::InvK:
        if (k == 0) return std::nullopt;
        return embed(*ctx, i64(k), e).inverse();
      case Weight::Inv2kPlus1:
        return embed(*ctx, i64(2 * k + 1), e).inverse();
      case Weight::Inv2kMinus1:
        return embed(*ctx, i64(2 * k) - 1, e).inverse();
      case Weight::AffineOverOdd:
        return (a_res + embed(*ctx, i64(k + 1), e)) *
               embed(*ctx, i64(2 * k + 1), e).inverse();
      default: {  // MixedL42
        Residue num = c1 * embed(*ctx, i64(k), e) - c0;
        Residue den = embed(*ctx, i64(4 * k * k) - 1, e);
        return num * den.inverse();
      }
    }
  }

  // Weight numerator at a special spot plus the leftover unit factor of the
  // denominator (the factor p itself is divided out by the caller).
  std::pair<Residue, Residue> special_parts(Weight w, u64 k) const {
    switch (w) {
      case Weight::Inv2kPlus1:
      case Weight::Inv2kMinus1:
        return {Residue(*ctx, 1, e), Residue(*ctx, 1, e)};
      case Weight::AffineOverOdd:
        return {a_res + embed(*ctx, i64(k + 1), e), Residue(*ctx, 1, e)};
      default: {  // MixedL42: 4k^2-1 = (2k-1)(2k+1), exactly one factor is p
        Residue num = c1 * embed(*ctx, i64(k), e) - c0;
        i64 other = (2 * i64(k) + 1 == i64(ctx->p())) ? 2 * i64(k) - 1
                                                      : 2 * i64(k) + 1;
        return {num, embed(*ctx, other, e)};
      }
    }
  }
};

}  // namespace detail

// row[k] = binom(a, k) mod p^e for k = 0..p-1, by the multiplicative
// recurrence row[k] = row[k-1] (a-k+1)/k.
inline std::vector<Residue> binom_row(const Rational& a,
                                      const ModulusContext& ctx, int e) {
  u64 p = ctx.p();
  std::vector<Residue> row;
  row.reserve(p);
  row.push_back(Residue(ctx, 1, e));
  Residue f = embed(ctx, a, e);  // a - k + 1 at k = 1
  Residue one(ctx, 1, e);
  for (u64 k = 1; k < p; ++k) {
    row.push_back(row.back() * f * embed(ctx, i64(k), e).inverse());
    f = f - one;
  }
  return row;
}

// sum_{k=0}^{p-1} binom(a,k) binom(-1-a,k) w(k) mod p^{ctx.k()}. The single
// terms whose weight denominator hits p are recomputed by a dedicated pass
// at precision k+1 and divided by p exactly once; every other term stays at
// the working precision. The binomial product at those spots must be
// divisible by p (it is whenever 2a+1 is a unit, and the self-cancelling
// weights cover the rest); a failure is a hard error, not a value.
inline Residue central_sum(const Rational& a, Weight w,
                           const ModulusContext& ctx) {
  u64 p = ctx.p();
  int e = ctx.k();
  std::vector<u64> spots = detail::weight_special_spots(w, p);
  std::optional<ModulusContext> elev;
  if (!spots.empty()) {
    if (e + 1 > ModulusContext::max_precision)
      throw precision_exhausted("no precision headroom for the 1/p term");
    elev.emplace(p, e + 1);
  }

  detail::WeightEval we(ctx, e, a);
  Residue acc(ctx, 0, e);
  Residue prod(ctx, 1, e);
  Residue f1 = embed(ctx, a, e);               // a - k + 1 at k = 1
  Residue f2 = -embed(ctx, a + 1, e);          // -a - k at k = 1
  Residue one(ctx, 1, e);
  for (u64 k = 0; k < p; ++k) {
    if (k > 0) {
      Residue ik = embed(ctx, i64(k), e).inverse();
      prod = prod * f1 * f2 * ik * ik;
      f1 = f1 - one;
      f2 = f2 - one;
    }
    bool special = false;
    for (u64 s : spots) special = special || (s == k);
    if (special) continue;
    if (auto wf = we.factor(w, k)) acc = acc + prod * *wf;
  }

  for (u64 s : spots) {
    int e1 = e + 1;
    detail::WeightEval we1(*elev, e1, a);
    Residue sp(*elev, 1, e1);
    Residue g1 = embed(*elev, a, e1);
    Residue g2 = -embed(*elev, a + 1, e1);
    Residue one1(*elev, 1, e1);
    for (u64 j = 1; j <= s; ++j) {
      Residue ij = embed(*elev, i64(j), e1).inverse();
      sp = sp * g1 * g2 * ij * ij;
      g1 = g1 - one1;
      g2 = g2 - one1;
    }
    auto [num, other_den] = we1.special_parts(w, s);
    Residue n = sp * num * other_den.inverse();
    acc = acc + n.divide_by_p();
  }
  return acc;
}

namespace detail {

// An integer binomial carried as p^val * unit so the multiplicative
// recurrences can divide through the factors that hit p.
struct PBinom {
  int val = 0;
  u128 unit = 1;
};

inline void pbinom_mul(PBinom& b, i64 f, u64 p, u128 mod, bool numerator) {
  int v = 0;
  u64 x = u64(f);
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  if (numerator) {
    b.val += v;
    b.unit = mulmod(b.unit, x, mod);
  } else {
    b.val -= v;
    u128 inv;
    egcd_inverse(x % mod, mod, inv);
    b.unit = mulmod(b.unit, inv, mod);
  }
}

struct FamilyRow {
  Family fam;
  u64 p;
  u128 mod;
  PBinom a, b;  // the two binomial factors at the current k

  FamilyRow(Family f, u64 p_, u128 mod_) : fam(f), p(p_), mod(mod_) {}

  void step(u64 k) {
    i64 kk = i64(k);
    switch (fam) {
      case Family::F16:
        step_c2k(a, kk);
        b = a;
        break;
      case Family::F27:
        step_c2k(a, kk);
        step_c3k(b, kk);
        break;
      case Family::F64:
        step_c2k(a, kk);
        for (i64 f : {4 * kk, 4 * kk - 1, 4 * kk - 2, 4 * kk - 3})
          pbinom_mul(b, f, p, mod, true);
        for (i64 f : {2 * kk, 2 * kk - 1, 2 * kk, 2 * kk - 1})
          pbinom_mul(b, f, p, mod, false);
        break;
      default:  // F432
        step_c3k(a, kk);
        for (i64 f : {6 * kk, 6 * kk - 1, 6 * kk - 2, 6 * kk - 3, 6 * kk - 4,
                      6 * kk - 5})
          pbinom_mul(b, f, p, mod, true);
        for (i64 f : {3 * kk, 3 * kk - 1, 3 * kk - 2, 3 * kk, 3 * kk - 1,
                      3 * kk - 2})
          pbinom_mul(b, f, p, mod, false);
        break;
    }
  }

  int val() const { return a.val + b.val; }
  u128 unit() const { return mulmod(a.unit, b.unit, mod); }

 private:
  void step_c2k(PBinom& x, i64 kk) {  // binom(2k,k) from binom(2k-2,k-1)
    pbinom_mul(x, 2 * kk, p, mod, true);
    pbinom_mul(x, 2 * kk - 1, p, mod, true);
    pbinom_mul(x, kk, p, mod, false);
    pbinom_mul(x, kk, p, mod, false);
  }
  void step_c3k(PBinom& x, i64 kk) {  // binom(3k,k) from binom(3k-3,k-1)
    for (i64 f : {3 * kk, 3 * kk - 1, 3 * kk - 2}) pbinom_mul(x, f, p, mod, true);
    for (i64 f : {kk, 2 * kk, 2 * kk - 1}) pbinom_mul(x, f, p, mod, false);
  }
};

}  // namespace detail

// The independent evaluation path for the (1.11)-style families: integer
// central binomial coefficients reduced on the fly (valuation tracked
// explicitly) times modular inverse powers of the base. AffineOverOdd and
// MixedL42 use the family's own parameter.
inline Residue ratio_form_sum(Family fam, Weight w, const ModulusContext& ctx) {
  u64 p = ctx.p();
  int e = ctx.k();
  std::vector<u64> spots = detail::weight_special_spots(w, p);
  std::optional<ModulusContext> elev;
  if (!spots.empty()) {
    if (e + 1 > ModulusContext::max_precision)
      throw precision_exhausted("no precision headroom for the 1/p term");
    elev.emplace(p, e + 1);
  }
  Rational a = family_parameter(fam);

  u128 mod = ctx.pow(e);
  detail::WeightEval we(ctx, e, a);
  detail::FamilyRow row(fam, p, mod);
  u128 ibase;
  egcd_inverse(family_base(fam) % mod, mod, ibase);
  u128 ibase_pow = 1;
  Residue acc(ctx, 0, e);
  for (u64 k = 0; k < p; ++k) {
    if (k > 0) {
      row.step(k);
      ibase_pow = mulmod(ibase_pow, ibase, mod);
    }
    bool special = false;
    for (u64 s : spots) special = special || (s == k);
    if (special) continue;
    auto wf = we.factor(w, k);
    if (!wf) continue;
    if (row.val() >= e) continue;  // term is 0 mod p^e
    u128 v = mulmod(row.unit(), ibase_pow, mod);
    v = mulmod(v, powmod(p, row.val(), mod), mod);
    acc = acc + Residue(ctx, v, e) * *wf;
  }

  for (u64 s : spots) {
    int e1 = e + 1;
    u128 mod1 = elev->pow(e1);
    detail::WeightEval we1(*elev, e1, a);
    detail::FamilyRow row1(fam, p, mod1);
    u128 ibase1;
    egcd_inverse(family_base(fam) % mod1, mod1, ibase1);
    u128 ib_pow = 1;
    for (u64 j = 1; j <= s; ++j) {
      row1.step(j);
      ib_pow = mulmod(ib_pow, ibase1, mod1);
    }
    if (row1.val() < 0)
      throw not_p_integral("negative valuation in ratio family term");
    auto [num, other_den] = we1.special_parts(w, s);
    u128 v = mulmod(row1.unit(), ib_pow, mod1);
    v = mulmod(v, powmod(p, row1.val(), mod1), mod1);
    Residue n = Residue(*elev, v, e1) * num * other_den.inverse();
    acc = acc + n.divide_by_p();
  }
  return acc;
}

// sum_{k=1}^{p-1} (-1)^k binom(a,k)/k at the context precision.
inline Residue alt_binom_over_k(const Rational& a, const ModulusContext& ctx) {
  u64 p = ctx.p();
  int e = ctx.k();
  std::vector<Residue> row = binom_row(a, ctx, e);
  Residue acc(ctx, 0, e);
  for (u64 k = 1; k < p; ++k) {
    Residue t = row[k] * embed(ctx, i64(k), e).inverse();
    acc = (k & 1) ? acc - t : acc + t;
  }
  return acc;
}

// F_{p-1}(a, x) = sum_{k=0}^{p-1} binom(a,k) x^k at the context precision.
inline Residue binom_geometric(const Rational& a, const Rational& x,
                               const ModulusContext& ctx) {
  u64 p = ctx.p();
  int e = ctx.k();
  std::vector<Residue> row = binom_row(a, ctx, e);
  Residue xr = embed(ctx, x, e);
  Residue xpow(ctx, 1, e);
  Residue acc(ctx, 0, e);
  for (u64 k = 0; k < p; ++k) {
    acc = acc + row[k] * xpow;
    xpow = xpow * xr;
  }
  return acc;
}

// sum_{k=0}^{p-1} binom(2k,k) mod p^e.
inline Residue central_binomial_sum(const ModulusContext& ctx, int e) {
  u64 p = ctx.p();
  u128 mod = ctx.pow(e);
  detail::PBinom c;
  Residue acc(ctx, 1, e);
  for (u64 k = 1; k < p; ++k) {
    detail::pbinom_mul(c, 2 * i64(k), p, mod, true);
    detail::pbinom_mul(c, 2 * i64(k) - 1, p, mod, true);
    detail::pbinom_mul(c, i64(k), p, mod, false);
    detail::pbinom_mul(c, i64(k), p, mod, false);
    if (c.val >= e) continue;
    u128 v = mulmod(c.unit, powmod(p, c.val, mod), mod);
    acc = acc + Residue(ctx, v, e);
  }
  return acc;
}

// sum_{k=1}^{p-1} binom(2k,k)/2^k mod p^e.
inline Residue central_binomial_halves_sum(const ModulusContext& ctx, int e) {
  u64 p = ctx.p();
  u128 mod = ctx.pow(e);
  detail::PBinom c;
  u128 inv2;
  egcd_inverse(2, mod, inv2);
  u128 half_pow = 1;
  Residue acc(ctx, 0, e);
  for (u64 k = 1; k < p; ++k) {
    detail::pbinom_mul(c, 2 * i64(k), p, mod, true);
    detail::pbinom_mul(c, 2 * i64(k) - 1, p, mod, true);
    detail::pbinom_mul(c, i64(k), p, mod, false);
    detail::pbinom_mul(c, i64(k), p, mod, false);
    half_pow = mulmod(half_pow, inv2, mod);
    if (c.val >= e) continue;
    u128 v = mulmod(c.unit, powmod(p, c.val, mod), mod);
    v = mulmod(v, half_pow, mod);
    acc = acc + Residue(ctx, v, e);
  }
  return acc;
}

// Exact sum_{k=0}^{n} binom(a,k)/binom(b,k); asserts Lerch's closed form
// (b+1)/(b+1-a) (1 - binom(a,n+1)/binom(b+1,n+1)).
inline Rational lerch_ratio_sum(const Rational& a, const Rational& b,
                                unsigned long n) {
  Rational acc(0);
  for (unsigned long k = 0; k <= n; ++k) {
    Rational cb = binomial(b, k);
    if (cb == 0)
      throw degenerate_denominator("binom(b,k) = 0 at k = " +
                                   std::to_string(k));
    acc += binomial(a, k) / cb;
  }
  if (b + 1 - a == 0) throw degenerate_denominator("b + 1 - a = 0");
  Rational cbn = binomial(b + 1, n + 1);
  if (cbn == 0) throw degenerate_denominator("binom(b+1,n+1) = 0");
  Rational closed =
      (b + 1) / (b + 1 - a) * (Rational(1) - binomial(a, n + 1) / cbn);
  if (acc != closed)
    throw error("lerch closed form mismatch at n = " + std::to_string(n));
  return acc;
}

// Exact sum_{k=0}^{n} binom(a,k) binom(-a,k); asserts both product closed
// forms binom(a-1,n)binom(-a-1,n) and binom(n+a,n)binom(n-a,n).
inline Rational self_conjugate_sum(const Rational& a, unsigned long n) {
  Rational acc(0);
  for (unsigned long k = 0; k <= n; ++k)
    acc += binomial(a, k) * binomial(-a, k);
  Rational c1 = binomial(a - 1, n) * binomial(-a - 1, n);
  Rational c2 = binomial(Rational(static_cast<long>(n)) + a, n) *
                binomial(Rational(static_cast<long>(n)) - a, n);
  if (acc != c1 || acc != c2)
    throw error("self-conjugate closed form mismatch at n = " +
                std::to_string(n));
  return acc;
}

}  // namespace supercong

#pragma once

#include <cstddef>
#include <vector>

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/rational.hpp"
#include "supercong/residue.hpp"
#include "supercong/u128.hpp"

namespace supercong {

namespace detail {

inline u64 mulp(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

inline u64 subp(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 invp(u64 a, u64 m) {
  u128 inv;
  if (egcd_inverse(a % m, m, inv) != 1)
    throw not_invertible("not invertible: " + std::to_string(a));
  return u64(inv);
}

}  // namespace detail

// Exact integer/rational tables, grown on demand and append-only. The
// integer tables are pre-grown to index 16 at construction.
class SequenceCache {
 public:
  SequenceCache() {
    euler(16);
    u_value(16);
    s_value(16);
  }

  // B_n by the defining recurrence B_0 = 1, sum_{k<n} C(n,k) B_k = 0.
  const Rational& bernoulli(std::size_t n) {
    if (bern_.empty()) bern_.push_back(Rational(1));
    for (std::size_t m = bern_.size(); m <= n; ++m) {
      Rational acc(0);
      mpz_class c(1);  // C(m+1, k)
      for (std::size_t k = 0; k < m; ++k) {
        acc += Rational(c) * bern_[k];
        c *= static_cast<unsigned long>(m + 1 - k);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(k + 1));
      }
      acc /= Rational(static_cast<long>(m + 1));
      bern_.push_back(-acc);
    }
    return bern_[n];
  }

  const mpz_class& euler(std::size_t n) {
    if (eul_.empty()) eul_.push_back(1);
    for (std::size_t m = eul_.size(); m <= n; ++m) {
      mpz_class acc(0);
      mpz_class c(1);  // C(m, 2j), starting at j = 1
      for (std::size_t j = 1; 2 * j <= m; ++j) {
        c *= static_cast<unsigned long>(m - 2 * j + 2);
        c *= static_cast<unsigned long>(m - 2 * j + 1);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(2 * j - 1));
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(2 * j));
        acc += c * eul_[m - 2 * j];
      }
      eul_.push_back(-acc);
    }
    return eul_[n];
  }

  const mpz_class& u_value(std::size_t n) {
    if (u_.empty()) u_.push_back(1);
    for (std::size_t m = u_.size(); m <= n; ++m) {
      mpz_class acc(0);
      mpz_class c(1);
      for (std::size_t j = 1; 2 * j <= m; ++j) {
        c *= static_cast<unsigned long>(m - 2 * j + 2);
        c *= static_cast<unsigned long>(m - 2 * j + 1);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(2 * j - 1));
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(2 * j));
        acc += c * u_[m - 2 * j];
      }
      u_.push_back(-2 * acc);
    }
    return u_[n];
  }

  const mpz_class& s_value(std::size_t n) {
    if (s_.empty()) s_.push_back(1);
    for (std::size_t m = s_.size(); m <= n; ++m) {
      mpz_class acc(0);
      mpz_class c(1);  // C(m, k)
      mpz_class pw = mpz_class(1) << (2 * m - 1);  // 2^{2(m-k)-1}
      for (std::size_t k = 0; k < m; ++k) {
        acc += c * pw * s_[k];
        pw >>= 2;
        c *= static_cast<unsigned long>(m - k);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(k + 1));
      }
      s_.push_back(1 - acc);
    }
    return s_[n];
  }

  // B_n(x) = sum C(n,k) B_k x^{n-k}, exact.
  Rational bernoulli_poly(std::size_t n, const Rational& x) {
    bernoulli(n);
    Rational acc(0);
    Rational xpow(1);
    mpz_class c(1);  // C(n, n-k) walking k downward == C(n,k) upward in x
    // iterate j = n..0 over the x-power so xpow only multiplies
    for (std::size_t j = 0; j <= n; ++j) {
      // term with B_{n-j} x^j, coefficient C(n, j)
      acc += Rational(c) * bern_[n - j] * xpow;
      if (j < n) {
        c *= static_cast<unsigned long>(n - j);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                        static_cast<unsigned long>(j + 1));
        xpow *= x;
      }
    }
    return acc;
  }

 private:
  std::vector<Rational> bern_;
  std::vector<mpz_class> eul_, u_, s_;
};

inline Rational harmonic_exact(std::size_t n) {
  Rational acc(0);
  for (std::size_t j = 1; j <= n; ++j) acc += Rational(1, static_cast<long>(j));
  return acc;
}

// Mod-p tables for one prime, grown lazily to at most index p-2 (von
// Staudt-Clausen keeps every requested Bernoulli denominator coprime to p
// below p-1). Built per worker task; no sharing, no locks.
class ModularSequences {
 public:
  explicit ModularSequences(u64 p) : p_(p) {}

  u64 p() const { return p_; }

  u64 bernoulli(std::size_t n) {
    check_index(n);
    if (bern_.empty()) bern_.push_back(1);
    for (std::size_t m = bern_.size(); m <= n; ++m) {
      u64 acc = 0;
      u64 c = 1;  // C(m+1, k)
      for (std::size_t k = 0; k < m; ++k) {
        acc = (acc + detail::mulp(c, bern_[k], p_)) % p_;
        c = detail::mulp(c, (m + 1 - k) % p_, p_);
        c = detail::mulp(c, detail::invp(k + 1, p_), p_);
      }
      u64 v = detail::mulp(acc, detail::invp((m + 1) % p_, p_), p_);
      bern_.push_back(v == 0 ? 0 : p_ - v);
    }
    return bern_[n];
  }

  u64 euler(std::size_t n) {
    check_index(n);
    grow_even_recurrence(eul_, n, 1);
    return eul_[n];
  }

  u64 u_value(std::size_t n) {
    check_index(n);
    grow_even_recurrence(u_, n, 2);
    return u_[n];
  }

  u64 s_value(std::size_t n) {
    check_index(n);
    if (s_.empty()) s_.push_back(1);
    u64 inv2 = detail::invp(2, p_);
    for (std::size_t m = s_.size(); m <= n; ++m) {
      u64 acc = 0;
      u64 c = 1;
      u64 pw = u64(powmod(2, 2 * m - 1, p_));
      u64 inv4 = detail::mulp(inv2, inv2, p_);
      for (std::size_t k = 0; k < m; ++k) {
        acc = (acc + detail::mulp(detail::mulp(c, pw, p_), s_[k], p_)) % p_;
        pw = detail::mulp(pw, inv4, p_);
        c = detail::mulp(c, (m - k) % p_, p_);
        c = detail::mulp(c, detail::invp(k + 1, p_), p_);
      }
      s_.push_back(detail::subp(1 % p_, acc, p_));
    }
    return s_[n];
  }

 private:
  void check_index(std::size_t n) const {
    if (n + 1 >= p_)
      throw index_out_of_range("modular table index " + std::to_string(n) +
                               " out of range for p = " + std::to_string(p_));
  }

  // E_n / U_n share the shape x_n = -w sum_{j>=1} C(n,2j) x_{n-2j}.
  void grow_even_recurrence(std::vector<u64>& tab, std::size_t n, u64 w) {
    if (tab.empty()) tab.push_back(1);
    for (std::size_t m = tab.size(); m <= n; ++m) {
      u64 acc = 0;
      u64 c = 1;
      for (std::size_t j = 1; 2 * j <= m; ++j) {
        c = detail::mulp(c, (m - 2 * j + 2) % p_, p_);
        c = detail::mulp(c, (m - 2 * j + 1) % p_, p_);
        c = detail::mulp(c, detail::invp(2 * j - 1, p_), p_);
        c = detail::mulp(c, detail::invp(2 * j, p_), p_);
        acc = (acc + detail::mulp(c, tab[m - 2 * j], p_)) % p_;
      }
      u64 v = detail::mulp(w, acc, p_);
      tab.push_back(v == 0 ? 0 : p_ - v);
    }
  }

  u64 p_;
  std::vector<u64> bern_, eul_, u_, s_;
};

// B_n(x) mod p for 1 <= n <= p-2 (p-integral range).
inline Residue bernoulli_poly_mod(const ModulusContext& ctx,
                                  ModularSequences& seq, std::size_t n,
                                  const Residue& x) {
  u64 p = ctx.p();
  if (n == 0 || n + 1 >= p)
    throw index_out_of_range("bernoulli_poly_mod needs 1 <= n <= p-2");
  seq.bernoulli(n);
  u64 xv = x.value() % p;
  std::vector<u64> xpow(n + 1);
  xpow[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) xpow[j] = detail::mulp(xpow[j - 1], xv, p);
  u64 acc = 0;
  u64 c = 1;  // C(n, k)
  for (std::size_t k = 0; k <= n; ++k) {
    acc = (acc + detail::mulp(detail::mulp(c, seq.bernoulli(k), p),
                              xpow[n - k], p)) %
          p;
    if (k < n) {
      c = detail::mulp(c, (n - k) % p, p);
      c = detail::mulp(c, detail::invp(k + 1, p), p);
    }
  }
  return Residue(ctx, acc, 1);
}

// E_n(x) mod p via the 2^{-n} sum C(n,k) (2x-1)^{n-k} E_k definition.
inline Residue euler_poly_mod(const ModulusContext& ctx, ModularSequences& seq,
                              std::size_t n, const Residue& x) {
  u64 p = ctx.p();
  if (n + 1 >= p)
    throw index_out_of_range("euler_poly_mod needs n <= p-2");
  seq.euler(n);
  u64 y = detail::subp(detail::mulp(2 % p, x.value() % p, p), 1 % p, p);
  std::vector<u64> ypow(n + 1);
  ypow[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) ypow[j] = detail::mulp(ypow[j - 1], y, p);
  u64 acc = 0;
  u64 c = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    acc = (acc + detail::mulp(detail::mulp(c, seq.euler(k), p), ypow[n - k],
                              p)) %
          p;
    if (k < n) {
      c = detail::mulp(c, (n - k) % p, p);
      c = detail::mulp(c, detail::invp(k + 1, p), p);
    }
  }
  u64 inv2n = u64(powmod(detail::invp(2, p), n, p));
  return Residue(ctx, detail::mulp(acc, inv2n, p), 1);
}

// q_p(b) = (b^{p-1} - 1)/p; one digit is consumed, so the result is known
// mod p^{k-1}.
inline Residue fermat_quotient(const ModulusContext& ctx, i64 b) {
  if (ctx.k() < 2) throw precision_exhausted("fermat_quotient needs k >= 2");
  i64 r = b % i64(ctx.p());
  if (r < 0) r += i64(ctx.p());
  if (r == 0) throw not_coprime("fermat quotient of multiple of p");
  u128 m = ctx.pow(ctx.k());
  u128 x = powmod(u128(r), ctx.p() - 1, m);
  return Residue(ctx, x - 1, ctx.k()).divide_by_p();
}

// sum_{r=1}^{n} r^{-j} mod p^e.
inline Residue inverse_power_sum(const ModulusContext& ctx, u64 n, unsigned j,
                                 int e) {
  Residue acc(ctx, 0, e);
  for (u64 r = 1; r <= n; ++r) {
    if (r % ctx.p() == 0)
      throw term_not_invertible("term 1/" + std::to_string(r) +
                                " undefined mod p");
    acc = acc + embed(ctx, i64(r), e).inverse().pow(j);
  }
  return acc;
}

inline Residue harmonic_mod(const ModulusContext& ctx, u64 n, int e) {
  return inverse_power_sum(ctx, n, 1, e);
}

// sum_{r=1}^{m} (-1)^r r^{-j} mod p.
inline Residue alt_inverse_power_sum(const ModulusContext& ctx, u64 m,
                                     unsigned j) {
  u64 p = ctx.p();
  u64 acc = 0;
  for (u64 r = 1; r <= m; ++r) {
    u64 t = u64(powmod(detail::invp(r % p, p), j, p));
    acc = (r & 1) ? detail::subp(acc, t, p) : (acc + t) % p;
  }
  return Residue(ctx, acc, 1);
}

// Glaisher's sum 2^k/k over k = 1..p-1, mod p.
inline Residue pow2_over_k_sum(const ModulusContext& ctx) {
  u64 p = ctx.p();
  u64 acc = 0, pw = 1;
  for (u64 k = 1; k < p; ++k) {
    pw = detail::mulp(pw, 2, p);
    acc = (acc + detail::mulp(pw, detail::invp(k, p), p)) % p;
  }
  return Residue(ctx, acc, 1);
}

// sum of 1/(2k+1) over k = 1..p-1 with k = (p-1)/2 excluded, mod p^e.
inline Residue odd_inverse_sum_excluding(const ModulusContext& ctx, int e) {
  u64 p = ctx.p();
  Residue acc(ctx, 0, e);
  for (u64 k = 1; k < p; ++k) {
    if (k == (p - 1) / 2) continue;
    acc = acc + embed(ctx, i64(2 * k + 1), e).inverse();
  }
  return acc;
}

// Phi_p(a) = (B_{p^2(p-1)}(-a) - B_{p^2(p-1)}) / (p^2(p-1)) mod p^3,
// computed by the harmonic-sum rearrangement
//   sum_{r<=<a>} 1/r - p t sum_{r<=<a>} 1/r^2 - (1/3) p^2 t^2 B_{p-3}(-a);
// the giant-index polynomial is never evaluated here.
inline Residue bernoulli_quotient(const ModulusContext& ctx,
                                  ModularSequences& seq, const Rational& a) {
  if (ctx.k() < 3) throw precision_exhausted("bernoulli_quotient needs k >= 3");
  u64 m = fractional_residue(a, ctx.p());
  if (m == 0)
    throw side_condition_violated("bernoulli_quotient needs a != 0 mod p");
  Rational t = tail_rational(a, ctx.p());
  Residue s1 = inverse_power_sum(ctx, m, 1, 3);
  Residue s2 = inverse_power_sum(ctx, m, 2, 2);
  Residue mid = (embed(ctx, t, 2) * s2).times_p();
  Residue t1 = embed(ctx, t, 1);
  Residue b = bernoulli_poly_mod(ctx, seq, ctx.p() - 3, embed(ctx, -a, 1));
  Residue third = embed(ctx, Rational(1, 3), 1);
  Residue last = (third * t1 * t1 * b).times_p().times_p();
  return s1 - mid - last;
}

// p*B_{p-1} mod p via the defining recurrence run mod p^2:
// p*B_{p-1} = -sum_{k=0}^{p-2} C(p,k) B_k.
inline Residue p_bernoulli_top_mod_p(const ModulusContext& ctx) {
  u64 p = ctx.p();
  u128 m2 = u128(p) * p;
  std::vector<u64> b;  // B_k mod p^2, k <= p-2
  b.reserve(p - 1);
  b.push_back(1);
  for (u64 mdx = 1; mdx + 1 < p; ++mdx) {
    u128 acc = 0;
    u128 c = 1;  // C(mdx+1, k) mod p^2
    for (u64 k = 0; k < mdx; ++k) {
      acc = (acc + mulmod(c, b[k], m2)) % m2;
      c = mulmod(c, (mdx + 1 - k) % m2, m2);
      u128 inv;
      egcd_inverse((k + 1) % m2, m2, inv);
      c = mulmod(c, inv, m2);
    }
    u128 inv;
    egcd_inverse((mdx + 1) % m2, m2, inv);
    u128 v = mulmod(acc, inv, m2);
    b.push_back(u64(v == 0 ? 0 : m2 - v));
  }
  u128 acc = 0;
  u128 c = 1;  // C(p, k) mod p^2
  for (u64 k = 0; k + 1 < p; ++k) {
    acc = (acc + mulmod(c, b[k], m2)) % m2;
    c = mulmod(c, (p - k) % m2, m2);
    u128 inv;
    egcd_inverse((k + 1) % m2, m2, inv);
    c = mulmod(c, inv, m2);
  }
  u128 v = acc == 0 ? 0 : m2 - acc;  // p*B_{p-1} mod p^2
  return Residue(ctx, v % p, 1);
}

}  // namespace supercong

#pragma once

#include <optional>
#include <string>

#include "supercong/errors.hpp"
#include "supercong/rational.hpp"
#include "supercong/registry.hpp"
#include "supercong/residue.hpp"
#include "supercong/sequences.hpp"
#include "supercong/sums.hpp"

namespace supercong {

// What the brute-force oracle can cross-check: the seven weights of the
// central product sum, the alternating binom(a,k)/k sum, the geometric sum
// at x = -2, and the giant-index Bernoulli quotient.
enum class OracleTarget {
  One,
  TimesK,
  Inv2kPlus1,
  Inv2kMinus1,
  InvK,
  AffineOverOdd,
  MixedL42,
  AltOverK,
  Geometric,
  Phi
};

inline const char* oracle_target_name(OracleTarget t) {
  switch (t) {
    case OracleTarget::One: return "one";
    case OracleTarget::TimesK: return "timesk";
    case OracleTarget::Inv2kPlus1: return "inv2kplus1";
    case OracleTarget::Inv2kMinus1: return "inv2kminus1";
    case OracleTarget::InvK: return "invk";
    case OracleTarget::AffineOverOdd: return "affine";
    case OracleTarget::MixedL42: return "mixed";
    case OracleTarget::AltOverK: return "altk";
    case OracleTarget::Geometric: return "geom";
    default: return "phi";
  }
}

inline std::optional<OracleTarget> oracle_target_from_name(
    const std::string& s) {
  for (OracleTarget t :
       {OracleTarget::One, OracleTarget::TimesK, OracleTarget::Inv2kPlus1,
        OracleTarget::Inv2kMinus1, OracleTarget::InvK,
        OracleTarget::AffineOverOdd, OracleTarget::MixedL42,
        OracleTarget::AltOverK, OracleTarget::Geometric, OracleTarget::Phi}) {
    if (s == oracle_target_name(t)) return t;
  }
  return std::nullopt;
}

inline int oracle_precision(OracleTarget t) {
  switch (t) {
    case OracleTarget::AltOverK:
    case OracleTarget::Geometric: return 2;
    default: return 3;
  }
}

constexpr u64 oracle_max_prime = 13;
constexpr u64 oracle_max_prime_phi = 7;

struct OracleOutcome {
  bool computed = false;  // false when both routes refuse consistently
  bool match = false;
  std::string exact_value;     // reduced rational, or refusal note
  std::string pipeline_value;  // canonical residue, or refusal note
  int exponent = 0;
};

namespace detail {

// Exact rational sum over all k (the terms with 2k+1 = p or 2k-1 = p are
// ordinary fractions here, so there is no precision question).
inline Rational oracle_exact_sum(u64 p, const Rational& a, OracleTarget t) {
  Rational acc(0);
  Rational ba(1), bb(1);  // binom(a,k), binom(-1-a,k)
  for (u64 k = 0; k < p; ++k) {
    if (k > 0) {
      long kk = static_cast<long>(k);
      ba *= (a - (kk - 1)) / Rational(kk);
      bb *= (-1 - a - (kk - 1)) / Rational(kk);
    }
    Rational prod = ba * bb;
    long kk = static_cast<long>(k);
    switch (t) {
      case OracleTarget::One: acc += prod; break;
      case OracleTarget::TimesK: acc += prod * Rational(kk); break;
      case OracleTarget::Inv2kPlus1:
        acc += prod / Rational(2 * kk + 1);
        break;
      case OracleTarget::Inv2kMinus1:
        acc += prod / Rational(2 * kk - 1);
        break;
      case OracleTarget::InvK:
        if (k > 0) acc += prod / Rational(kk);
        break;
      case OracleTarget::AffineOverOdd:
        acc += prod * (a + kk + 1) / Rational(2 * kk + 1);
        break;
      default:  // MixedL42
        acc += prod *
               ((2 * a * (a + 1) + 1) * Rational(kk) - a * (a + 1)) /
               Rational(4 * kk * kk - 1);
        break;
    }
  }
  return acc;
}

inline Rational oracle_exact_alt_over_k(u64 p, const Rational& a) {
  Rational acc(0);
  Rational ba(1);
  for (u64 k = 1; k < p; ++k) {
    long kk = static_cast<long>(k);
    ba *= (a - (kk - 1)) / Rational(kk);
    Rational term = ba / Rational(kk);
    acc += (k & 1) ? -term : term;
  }
  return acc;
}

inline Rational oracle_exact_geometric(u64 p, const Rational& a,
                                       const Rational& x) {
  Rational acc(0), ba(1), xpow(1);
  for (u64 k = 0; k < p; ++k) {
    if (k > 0) {
      long kk = static_cast<long>(k);
      ba *= (a - (kk - 1)) / Rational(kk);
      xpow *= x;
    }
    acc += ba * xpow;
  }
  return acc;
}

// Phi via the giant-index Bernoulli polynomial itself, evaluated exactly.
inline Rational oracle_exact_phi(u64 p, const Rational& a,
                                 SequenceCache& exact) {
  unsigned long n = static_cast<unsigned long>(p * p * (p - 1));
  Rational bn = exact.bernoulli(n);
  Rational bpoly = exact.bernoulli_poly(n, -a);
  return (bpoly - bn) / Rational(static_cast<long>(p * p * (p - 1)));
}

}  // namespace detail

// Evaluate one target by exact big-rational brute force, confirm the value
// is a p-adic integer, reduce it, and compare with the modular pipeline.
// When the exact value has p in its denominator the pipeline must refuse
// as well; that counts as a consistent (non)result, not a mismatch.
inline OracleOutcome oracle_cross_check(u64 p, const Rational& a,
                                        OracleTarget t, SequenceCache& exact) {
  if (p > oracle_max_prime || (t == OracleTarget::Phi && p > oracle_max_prime_phi))
    throw usage_error("oracle bound exceeded: p <= 13 (p <= 7 for phi)");
  if (!is_p_integral(a, p))
    throw denominator_divisible_by_p("a is not a p-adic integer");

  OracleOutcome out;
  int e = oracle_precision(t);
  out.exponent = e;
  ModulusContext ctx(p, e);
  ModularSequences seq(p);

  Rational exact_val;
  bool exact_ok = true;
  switch (t) {
    case OracleTarget::AltOverK:
      exact_val = detail::oracle_exact_alt_over_k(p, a);
      break;
    case OracleTarget::Geometric:
      exact_val = detail::oracle_exact_geometric(p, a, Rational(-2));
      break;
    case OracleTarget::Phi:
      exact_val = detail::oracle_exact_phi(p, a, exact);
      break;
    default: exact_val = detail::oracle_exact_sum(p, a, t); break;
  }
  if (!is_p_integral(exact_val, p)) {
    exact_ok = false;
    out.exact_value = "not p-integral: " + rational_to_string(exact_val);
  } else {
    out.exact_value = rational_to_string(exact_val);
  }

  std::optional<Residue> pipe;
  std::string refusal;
  try {
    switch (t) {
      case OracleTarget::AltOverK: pipe = alt_binom_over_k(a, ctx); break;
      case OracleTarget::Geometric:
        pipe = binom_geometric(a, Rational(-2), ctx);
        break;
      case OracleTarget::Phi: pipe = bernoulli_quotient(ctx, seq, a); break;
      case OracleTarget::One: pipe = central_sum(a, Weight::One, ctx); break;
      case OracleTarget::TimesK:
        pipe = central_sum(a, Weight::TimesK, ctx);
        break;
      case OracleTarget::Inv2kPlus1:
        pipe = central_sum(a, Weight::Inv2kPlus1, ctx);
        break;
      case OracleTarget::Inv2kMinus1:
        pipe = central_sum(a, Weight::Inv2kMinus1, ctx);
        break;
      case OracleTarget::InvK: pipe = central_sum(a, Weight::InvK, ctx); break;
      default:
        pipe = central_sum(a, t == OracleTarget::AffineOverOdd
                                  ? Weight::AffineOverOdd
                                  : Weight::MixedL42,
                           ctx);
        break;
    }
  } catch (const error& err) {
    refusal = err.what();
  }
  out.pipeline_value = pipe ? pipe->str() : ("refused: " + refusal);

  if (!exact_ok || !pipe) {
    out.computed = false;
    out.match = !exact_ok && !pipe;  // consistent refusal
    return out;
  }
  out.computed = true;
  Residue expected = embed(ctx, exact_val, e);
  out.match = expected.value() == pipe->value();
  return out;
}

}  // namespace supercong

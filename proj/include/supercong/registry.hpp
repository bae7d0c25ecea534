#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/rational.hpp"
#include "supercong/residue.hpp"
#include "supercong/rng.hpp"
#include "supercong/sequences.hpp"
#include "supercong/sums.hpp"

namespace supercong {

enum class Status { pass, fail, skipped_precondition };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped_precondition";
  }
}

// One verification outcome. lhs/rhs are canonical residues as decimal
// strings; diff_valuation is v_p(lhs - rhs) capped at the working precision,
// so status == pass exactly when diff_valuation >= modulus_exponent.
struct CongruenceReport {
  std::string theorem_id;
  u64 p = 0;
  std::string a;
  int modulus_exponent = 0;
  std::string lhs, rhs;
  Status status = Status::fail;
  int diff_valuation = 0;
};

// How the statement consumes its parameter: none at all, a fixed rational
// baked into the statement, a free a in Z_p, or a t-parameter family where
// the verifier sets a = p*t.
enum class ADomain { None, Fixed, Free, TParam };

// Side conditions mirror the stated hypotheses exactly; excluded lists the
// residues r with the statement hypothesis a != r (mod p).
struct TheoremSpec {
  const char* id;
  int exponent;
  ADomain domain;
  const char* fixed_a;
  const char* excluded;
};

inline const std::vector<TheoremSpec>& theorem_registry() {
  static const std::vector<TheoremSpec> table = {
      {"EQ_1_1", 2, ADomain::Fixed, "-1/2", ""},
      {"EQ_1_2", 2, ADomain::Fixed, "-1/3", ""},
      {"EQ_1_3", 2, ADomain::Fixed, "-1/4", ""},
      {"EQ_1_4", 2, ADomain::Fixed, "-1/6", ""},
      {"EQ_1_5", 3, ADomain::Fixed, "-1/2", ""},
      {"EQ_1_6", 3, ADomain::Fixed, "-1/6", ""},
      {"EQ_1_7", 3, ADomain::Fixed, "-1/4", ""},
      {"EQ_1_8", 3, ADomain::Fixed, "-1/3", ""},
      {"EQ_1_9", 3, ADomain::Fixed, "-1/4", ""},
      {"EQ_1_10", 3, ADomain::Fixed, "-1/4", ""},
      {"EQ_1_12", 2, ADomain::Free, nullptr, ""},
      {"LEM_2_1", 3, ADomain::TParam, nullptr, ""},
      {"THM_2_1", 3, ADomain::Free, nullptr, "0"},
      {"THM_2_1_ALT", 3, ADomain::Free, nullptr, "0"},
      {"THM_2_2", 3, ADomain::Free, nullptr, "0,-1"},
      {"COR_2_1", 3, ADomain::Fixed, "-1/6", ""},
      {"COR_2_2", 3, ADomain::Fixed, "-1/3", ""},
      {"COR_2_3", 3, ADomain::Fixed, "-1/4", ""},
      {"COR_2_4", 3, ADomain::Free, nullptr, "0"},
      {"COR_2_5", 3, ADomain::Fixed, "-1/6", ""},
      {"COR_2_6", 3, ADomain::Fixed, "-1/3", ""},
      {"LEM_3_2", 4, ADomain::Free, nullptr, "0"},
      {"LEM_3_3", 3, ADomain::TParam, nullptr, ""},
      {"EQ_3_4", 2, ADomain::None, nullptr, ""},
      {"THM_3_1", 3, ADomain::Free, nullptr, "0,-1/2"},
      {"THM_3_1_ALT", 3, ADomain::Free, nullptr, "0,-1/2"},
      {"THM_3_2", 3, ADomain::Fixed, "-1/4", ""},
      {"THM_3_3", 3, ADomain::Fixed, "-1/3", ""},
      {"THM_3_4", 3, ADomain::Fixed, "-1/6", ""},
      {"THM_3_5", 3, ADomain::Free, nullptr, "-1/2"},
      {"COR_3_1", 3, ADomain::Free, nullptr, "0,1/2,-1/2"},
      {"COR_3_2", 3, ADomain::Fixed, "-1/3", ""},
      {"LEM_4_2", 3, ADomain::Free, nullptr, "0,-1,1/2,-1/2"},
      {"THM_4_1", 3, ADomain::Free, nullptr, "0,-1,1/2,-1/2"},
      {"COR_4_1", 3, ADomain::Fixed, "-1/4", ""},
      {"COR_4_2", 3, ADomain::Fixed, "-1/3", ""},
      {"COR_4_3", 3, ADomain::Fixed, "-1/6", ""},
      {"LEM_5_1", 3, ADomain::TParam, nullptr, ""},
      {"THM_5_1", 3, ADomain::Free, nullptr, "0"},
      {"THM_5_2_I", 3, ADomain::Fixed, "-1/3", ""},
      {"THM_5_2_II", 3, ADomain::Fixed, "-1/4", ""},
      {"THM_5_2_III", 3, ADomain::Fixed, "-1/6", ""},
      {"THM_6_1", 2, ADomain::Free, nullptr, "0"},
      {"THM_6_2", 2, ADomain::Fixed, "-1/4", ""},
      {"THM_6_3", 2, ADomain::Fixed, "-1/3", ""},
      {"THM_6_4", 2, ADomain::Fixed, "-1/6", ""},
      {"THM_7_1", 2, ADomain::Free, nullptr, "0"},
      {"THM_7_2", 2, ADomain::Fixed, "-1/3", ""},
      {"RMK_2_1", 3, ADomain::None, nullptr, ""},
      {"RMK_5_1", 3, ADomain::None, nullptr, ""},
      {"RMK_6_1", 2, ADomain::Fixed, "-1/2", ""},
      {"RMK_7_1", 3, ADomain::None, nullptr, ""},
  };
  return table;
}

inline const TheoremSpec& find_theorem(const std::string& id) {
  for (const auto& t : theorem_registry())
    if (id == t.id) return t;
  throw usage_error("unknown theorem id: " + id);
}

// Per-prime contexts, modular tables and memoized Fermat quotients; built
// once per worker task, not shared.
class PrimeWorkspace {
 public:
  explicit PrimeWorkspace(u64 p)
      : ctx2_(p, 2), ctx3_(p, 3), ctx4_(p, 4), seq_(p) {}
  PrimeWorkspace(const PrimeWorkspace&) = delete;
  PrimeWorkspace& operator=(const PrimeWorkspace&) = delete;

  u64 p() const { return ctx2_.p(); }
  const ModulusContext& ctx(int e) const {
    switch (e) {
      case 2: return ctx2_;
      case 3: return ctx3_;
      default: return ctx4_;
    }
  }
  ModularSequences& seq() { return seq_; }

  // q_p(b) truncated to the requested precision (<= 3).
  Residue q(i64 b, int prec) {
    auto it = fq_.find(b);
    if (it == fq_.end())
      it = fq_.emplace(b, fermat_quotient(ctx4_, b)).first;
    return it->second.truncated(prec);
  }

 private:
  ModulusContext ctx2_, ctx3_, ctx4_;
  ModularSequences seq_;
  std::map<i64, Residue> fq_;
};

namespace detail {

// p^s * (c truncated to e-s digits), as a residue mod p^e.
inline Residue p_shift(const Residue& c, int s, int e) {
  Residue r = c.truncated(e - s);
  for (int i = 0; i < s; ++i) r = r.times_p();
  return r;
}

inline std::vector<Rational> parse_exclusions(const char* list) {
  std::vector<Rational> out;
  if (!list) return out;
  std::string s(list);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_rational(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

// lhs and rhs of one statement at its native precision.
struct LhsRhs {
  Residue lhs, rhs;
};

inline LhsRhs evaluate_entry(PrimeWorkspace& ws, const std::string& id,
                             const Rational& a) {
  const u64 p = ws.p();
  const ModulusContext& c2 = ws.ctx(2);
  const ModulusContext& c3 = ws.ctx(3);
  const ModulusContext& c4 = ws.ctx(4);
  ModularSequences& sq = ws.seq();

  auto r1 = [&](const Rational& x) { return embed(c3, x, 1); };
  auto leg = [&](i64 n) { return legendre(n, p); };
  auto euler_n = [&](std::size_t n) { return Residue(c3, sq.euler(n), 1); };
  auto bern_n = [&](std::size_t n) { return Residue(c3, sq.bernoulli(n), 1); };
  auto u_n = [&](std::size_t n) { return Residue(c3, sq.u_value(n), 1); };
  auto s_n = [&](std::size_t n) { return Residue(c3, sq.s_value(n), 1); };
  auto epoly = [&](std::size_t n, const Rational& x) {
    return euler_poly_mod(c3, sq, n, r1(x));
  };
  auto bpoly = [&](std::size_t n, const Rational& x) {
    return bernoulli_poly_mod(c3, sq, n, r1(x));
  };

  // a-dependent shorthands; only touched by Free/TParam entries, whose
  // preconditions were checked by the caller.
  auto frac = [&] { return fractional_residue(a, p); };
  auto trat = [&] { return tail_rational(a, p); };
  auto sigma = [&] { return i64(frac() % 2 == 0 ? 1 : -1); };

  if (id == "EQ_1_1")
    return {ratio_form_sum(Family::F16, Weight::One, c2),
            embed(c2, leg(-1), 2)};
  if (id == "EQ_1_2")
    return {ratio_form_sum(Family::F27, Weight::One, c2),
            embed(c2, leg(-3), 2)};
  if (id == "EQ_1_3")
    return {ratio_form_sum(Family::F64, Weight::One, c2),
            embed(c2, leg(-2), 2)};
  if (id == "EQ_1_4")
    return {ratio_form_sum(Family::F432, Weight::One, c2),
            embed(c2, leg(-1), 2)};
  if (id == "EQ_1_5")
    return {ratio_form_sum(Family::F16, Weight::One, c3),
            embed(c3, leg(-1), 3) - p_shift(euler_n(p - 3), 2, 3)};
  if (id == "EQ_1_6" || id == "COR_2_1")
    return {ratio_form_sum(Family::F432, Weight::One, c3),
            embed(c3, leg(-1), 3) -
                p_shift(r1(Rational(25, 9)) * euler_n(p - 3), 2, 3)};
  if (id == "EQ_1_7")
    return {ratio_form_sum(Family::F64, Weight::One, c3),
            embed(c3, leg(-2), 3) -
                p_shift(r1(Rational(3, 16)) * epoly(p - 3, Rational(1, 4)), 2,
                        3)};
  if (id == "EQ_1_8")
    return {ratio_form_sum(Family::F27, Weight::One, c3),
            embed(c3, leg(-3), 3) -
                p_shift(r1(Rational(1, 3)) * bpoly(p - 2, Rational(1, 3)), 2,
                        3)};
  if (id == "EQ_1_9")
    return {ratio_form_sum(Family::F64, Weight::Inv2kPlus1, c3),
            embed(c3, leg(-1), 3) -
                p_shift(r1(Rational(3)) * euler_n(p - 3), 2, 3)};
  if (id == "EQ_1_10")
    return {ratio_form_sum(Family::F64, Weight::InvK, c3),
            embed(c3, i64(-3), 3) * harmonic_mod(c3, (p - 1) / 2, 3) +
                p_shift(r1(Rational(7, 4)) * bern_n(p - 3), 2, 3)};
  if (id == "EQ_1_12")
    return {central_sum(a, Weight::One, c2), embed(c2, sigma(), 2)};
  if (id == "LEM_2_1") {
    Rational aa = Rational(static_cast<long>(p)) * a;  // a = p t
    return {central_sum(aa, Weight::One, c3), Residue(c3, 1, 3)};
  }
  if (id == "THM_2_1") {
    Rational t = trat();
    Residue coeff = r1(t * (t + 1)) * epoly(p - 3, -a);
    return {central_sum(a, Weight::One, c3),
            embed(c3, sigma(), 3) + p_shift(coeff, 2, 3)};
  }
  if (id == "THM_2_1_ALT") {
    Rational t = trat();
    Residue coeff =
        r1(t * (t + 1)) * (r1(Rational(2) / (a * a)) - epoly(p - 3, a));
    return {central_sum(a, Weight::One, c3),
            embed(c3, sigma(), 3) + p_shift(coeff, 2, 3)};
  }
  if (id == "THM_2_2") {
    Rational t = trat();
    Residue coeff = r1(t * (t + 1)) *
                    (r1(a * (a + 1)) * epoly(p - 3, -a) - Residue(c3, 1, 1));
    return {central_sum(a, Weight::TimesK, c3),
            embed(c3, Rational(sigma()) * a * (a + 1), 3) +
                p_shift(coeff, 2, 3)};
  }
  if (id == "COR_2_2")
    return {ratio_form_sum(Family::F27, Weight::One, c3),
            embed(c3, leg(-3), 3) -
                p_shift(r1(Rational(2)) * u_n(p - 3), 2, 3)};
  if (id == "COR_2_3")
    return {ratio_form_sum(Family::F64, Weight::One, c3),
            embed(c3, leg(-2), 3) -
                p_shift(r1(Rational(3)) * s_n(p - 3), 2, 3)};
  if (id == "COR_2_4") {
    Rational t = trat();
    return {central_sum(a, Weight::One, c3) + central_sum(-a, Weight::One, c3),
            p_shift(r1(t * (t + 1) * 2 / (a * a)), 2, 3)};
  }
  if (id == "COR_2_5")
    return {ratio_form_sum(Family::F432, Weight::TimesK, c3),
            embed(c3, Rational(-5, 36), 3) * embed(c3, leg(-1), 3) +
                p_shift(r1(Rational(5, 36)) +
                            r1(Rational(125, 324)) * euler_n(p - 3),
                        2, 3)};
  if (id == "COR_2_6")
    return {ratio_form_sum(Family::F27, Weight::TimesK, c3),
            embed(c3, Rational(-2, 9), 3) * embed(c3, leg(-3), 3) +
                p_shift(r1(Rational(2, 9)) + r1(Rational(4, 9)) * u_n(p - 3),
                        2, 3)};
  if (id == "LEM_3_2") {
    Rational t = trat();
    u64 m = frac();
    std::vector<Residue> ra = binom_row(a - 1, c4, 4);
    std::vector<Residue> rb = binom_row(-a - 1, c4, 4);
    Residue tt2 = embed(c4, t * (t + 1), 2);
    Residue minv = embed(c4, i64(m), 2).inverse();
    Residue lead = p_shift(tt2 * minv * minv, 2, 4);
    Residue hm = harmonic_mod(c4, m, 1);
    Residue corr =
        embed(c4, t * (t + 1), 1) *
        (embed(c4, -(1 + 2 * t) / (a * a * a), 1) +
         embed(c4, Rational(2) / (a * a), 1) * hm);
    return {ra[p - 1] * rb[p - 1], lead + p_shift(corr, 3, 4)};
  }
  if (id == "LEM_3_3") {
    Rational aa = Rational(static_cast<long>(p)) * a;  // a = p t
    return {embed(c3, 2 * aa + 1, 3) * central_sum(aa, Weight::Inv2kPlus1, c3),
            embed(c3, 1 + 2 * a, 3)};
  }
  if (id == "EQ_3_4")
    return {odd_inverse_sum_excluding(c2, 2), embed(c2, i64(-1), 2)};
  if (id == "THM_3_1") {
    Rational t = trat();
    Residue coeff = r1(t * (t + 1) / (1 + 2 * a)) * bpoly(p - 2, -a);
    return {central_sum(a, Weight::Inv2kPlus1, c3),
            embed(c3, (1 + 2 * t) / (1 + 2 * a), 3) + p_shift(coeff, 2, 3)};
  }
  if (id == "THM_3_1_ALT") {
    Rational t = trat();
    Residue coeff = r1(t * (t + 1) / (1 + 2 * a)) *
                    (r1(Rational(2) / (a * a)) - bpoly(p - 2, a));
    return {central_sum(a, Weight::Inv2kPlus1, c3),
            embed(c3, (1 + 2 * t) / (1 + 2 * a), 3) + p_shift(coeff, 2, 3)};
  }
  if (id == "THM_3_2")
    return {ratio_form_sum(Family::F64, Weight::Inv2kPlus1, c3),
            embed(c3, leg(-1), 3) -
                p_shift(r1(Rational(3)) * euler_n(p - 3), 2, 3)};
  if (id == "THM_3_3")
    return {ratio_form_sum(Family::F27, Weight::Inv2kPlus1, c3),
            embed(c3, legendre(i64(p), 3), 3) -
                p_shift(r1(Rational(4)) * u_n(p - 3), 2, 3)};
  if (id == "THM_3_4")
    return {ratio_form_sum(Family::F432, Weight::Inv2kPlus1, c3),
            embed(c3, legendre(i64(p), 3), 3) -
                p_shift(r1(Rational(25, 4)) * u_n(p - 3), 2, 3)};
  if (id == "THM_3_5") {
    Rational t = trat();
    Residue coeff = r1(t * (t + 1) / 4) * bpoly(p - 2, -a / 2);
    return {central_sum(a, Weight::AffineOverOdd, c3),
            embed(c3, Rational(1 + sigma()) / 2 + t, 3) + p_shift(coeff, 2, 3)};
  }
  if (id == "COR_3_1") {
    Rational t = trat();
    Residue lhs = embed(c3, 2 * a + 1, 3) *
                      central_sum(a, Weight::Inv2kPlus1, c3) +
                  embed(c3, 1 - 2 * a, 3) *
                      central_sum(-a, Weight::Inv2kPlus1, c3);
    return {lhs, p_shift(r1(t * (t + 1) * 2 / (a * a)), 2, 3)};
  }
  if (id == "COR_3_2")
    return {embed(c3, i64(2), 3) * ratio_form_sum(Family::F27, Weight::One, c3) -
                ratio_form_sum(Family::F27, Weight::Inv2kPlus1, c3),
            embed(c3, legendre(i64(p), 3), 3)};
  if (id == "LEM_4_2") {
    Rational t = trat();
    return {central_sum(a, Weight::MixedL42, c3),
            -p_shift(r1(t * (t + 1)), 2, 3)};
  }
  if (id == "THM_4_1") {
    Rational t = trat();
    Residue coeff =
        r1(t * (t + 1)) *
        (Residue(c3, 4 % p, 1) + r1(2 * a + 1) * bpoly(p - 2, -a));
    return {central_sum(a, Weight::Inv2kMinus1, c3),
            embed(c3, -(2 * a + 1) * (2 * t + 1), 3) - p_shift(coeff, 2, 3)};
  }
  if (id == "COR_4_1")
    return {ratio_form_sum(Family::F64, Weight::Inv2kMinus1, c3),
            embed(c3, Rational(-1, 4), 3) * embed(c3, leg(-1), 3) +
                p_shift(r1(Rational(3, 4)) *
                            (Residue(c3, 1, 1) + euler_n(p - 3)),
                        2, 3)};
  if (id == "COR_4_2")
    return {ratio_form_sum(Family::F27, Weight::Inv2kMinus1, c3),
            embed(c3, Rational(-1, 9), 3) * embed(c3, leg(-3), 3) +
                p_shift(r1(Rational(4, 9)) *
                            (Residue(c3, 2 % p, 1) + u_n(p - 3)),
                        2, 3)};
  if (id == "COR_4_3")
    return {ratio_form_sum(Family::F432, Weight::Inv2kMinus1, c3),
            embed(c3, Rational(-4, 9), 3) * embed(c3, leg(-3), 3) +
                p_shift(r1(Rational(5, 9)) *
                            (Residue(c3, 1, 1) + r1(Rational(5)) * u_n(p - 3)),
                        2, 3)};
  if (id == "LEM_5_1") {
    Rational aa = Rational(static_cast<long>(p)) * a;  // a = p t
    return {central_sum(aa, Weight::InvK, c3),
            -p_shift(r1(Rational(2, 3) * a) * bern_n(p - 3), 2, 3)};
  }
  if (id == "THM_5_1") {
    Rational t = trat();
    Residue phi = bernoulli_quotient(c3, sq, a);
    Residue coeff = r1(Rational(2, 3) * t * (t + 1)) * bpoly(p - 3, -a);
    return {central_sum(a, Weight::InvK, c3),
            -p_shift(coeff, 2, 3) - phi - phi};
  }
  if (id == "THM_5_2_I") {
    Residue q3 = ws.q(3, 3);
    Residue q3a = q3.truncated(2), q3b = q3.truncated(1);
    Residue rhs = embed(c3, i64(3), 3) * q3 -
                  p_shift(embed(c3, Rational(3, 2), 2) * q3a * q3a, 1, 3) +
                  p_shift(q3b * q3b * q3b, 2, 3) +
                  p_shift(r1(Rational(52, 27)) * bern_n(p - 3), 2, 3);
    return {ratio_form_sum(Family::F27, Weight::InvK, c3), rhs};
  }
  if (id == "THM_5_2_II") {
    Residue q2 = ws.q(2, 3);
    Residue q2a = q2.truncated(2), q2b = q2.truncated(1);
    Residue rhs = embed(c3, i64(6), 3) * q2 -
                  p_shift(embed(c3, i64(3), 2) * q2a * q2a, 1, 3) +
                  p_shift(Residue(c3, 2 % p, 1) * q2b * q2b * q2b, 2, 3) +
                  p_shift(r1(Rational(7, 2)) * bern_n(p - 3), 2, 3);
    return {ratio_form_sum(Family::F64, Weight::InvK, c3), rhs};
  }
  if (id == "THM_5_2_III") {
    Residue q2 = ws.q(2, 3), q3 = ws.q(3, 3);
    Residue q2a = q2.truncated(2), q3a = q3.truncated(2);
    Residue q2b = q2.truncated(1), q3b = q3.truncated(1);
    Residue mid = embed(c3, i64(2), 2) * q2a * q2a +
                  embed(c3, Rational(3, 2), 2) * q3a * q3a;
    Residue cub = r1(Rational(4, 3)) * q2b * q2b * q2b + q3b * q3b * q3b;
    Residue rhs = embed(c3, i64(4), 3) * q2 + embed(c3, i64(3), 3) * q3 -
                  p_shift(mid, 1, 3) + p_shift(cub, 2, 3) +
                  p_shift(r1(Rational(455, 54)) * bern_n(p - 3), 2, 3);
    return {ratio_form_sum(Family::F432, Weight::InvK, c3), rhs};
  }
  if (id == "THM_6_1") {
    Rational t = trat();
    Residue phi = bernoulli_quotient(c3, sq, a).truncated(2);
    Residue coeff = r1(t / 2) * bpoly(p - 2, -a);
    return {alt_binom_over_k(a, c2), -phi + p_shift(coeff, 1, 2)};
  }
  if (id == "THM_6_2") {
    Residue q2 = ws.q(2, 2);
    Residue q2b = q2.truncated(1);
    Residue rhs = embed(c2, i64(3), 2) * q2 -
                  p_shift(r1(Rational(3, 2)) * q2b * q2b, 1, 2) -
                  p_shift(Residue(c3, u64(2 - leg(-1)) % p, 1) *
                              euler_n(p - 3),
                          1, 2);
    return {alt_binom_over_k(a, c2), rhs};
  }
  if (id == "THM_6_3") {
    Residue q3 = ws.q(3, 2);
    Residue q3b = q3.truncated(1);
    Residue rhs = embed(c2, Rational(3, 2), 2) * q3 -
                  p_shift(r1(Rational(3, 4)) * q3b * q3b, 1, 2) -
                  p_shift(r1(Rational(3 - leg(-3)) / 2) * u_n(p - 3), 1, 2);
    return {alt_binom_over_k(a, c2), rhs};
  }
  if (id == "THM_6_4") {
    Residue q2 = ws.q(2, 2), q3 = ws.q(3, 2);
    Residue q2b = q2.truncated(1), q3b = q3.truncated(1);
    Residue sqr = q2b * q2b + r1(Rational(3, 4)) * q3b * q3b;
    Residue rhs = embed(c2, i64(2), 2) * q2 +
                  embed(c2, Rational(3, 2), 2) * q3 - p_shift(sqr, 1, 2) -
                  p_shift(r1(Rational(5, 2) * (3 - 2 * leg(-3))) * u_n(p - 3),
                          1, 2);
    return {alt_binom_over_k(a, c2), rhs};
  }
  if (id == "THM_7_1") {
    Rational t = trat();
    Residue coeff = r1(t) * euler_poly_mod(c3, sq, p - 2, r1(-a));
    return {binom_geometric(a, Rational(-2), c2),
            embed(c2, sigma(), 2) - p_shift(coeff, 1, 2)};
  }
  if (id == "THM_7_2") {
    Residue q2b = ws.q(2, 1);
    return {binom_geometric(a, Rational(-2), c2),
            embed(c2, leg(-3), 2) +
                p_shift(r1(Rational(3 - leg(-3)) / 3) * q2b, 1, 2)};
  }
  if (id == "RMK_2_1")
    return {central_binomial_sum(c3, 3),
            embed(c3, leg(-3), 3) -
                p_shift(r1(Rational(1, 3)) * bpoly(p - 2, Rational(1, 3)), 2,
                        3)};
  if (id == "RMK_5_1")
    return {ratio_form_sum(Family::F16, Weight::InvK, c3),
            embed(c3, i64(-2), 3) * harmonic_mod(c3, (p - 1) / 2, 3)};
  if (id == "RMK_6_1") {
    Residue q2 = ws.q(2, 2);
    Residue q2b = q2.truncated(1);
    return {alt_binom_over_k(a, c2),
            embed(c2, i64(2), 2) * q2 - p_shift(q2b * q2b, 1, 2)};
  }
  if (id == "RMK_7_1")
    return {Residue(c3, 1, 3) + central_binomial_halves_sum(c3, 3),
            embed(c3, leg(-1), 3) - p_shift(euler_n(p - 3), 2, 3)};

  throw usage_error("unknown theorem id: " + id);
}

}  // namespace detail

// Verify one registry entry against a prepared workspace. For TParam
// entries the parameter is t (the verifier sets a = p t); reports store the
// input verbatim so any failure reproduces in isolation.
inline CongruenceReport verify_with(PrimeWorkspace& ws, const TheoremSpec& spec,
                                    const Rational* param,
                                    int precision_override = 0) {
  CongruenceReport rep;
  rep.theorem_id = spec.id;
  rep.p = ws.p();
  int pe = spec.exponent;
  if (precision_override > 0 && precision_override < pe)
    pe = precision_override;
  rep.modulus_exponent = pe;

  Rational a(0);
  switch (spec.domain) {
    case ADomain::None: rep.a = ""; break;
    case ADomain::Fixed:
      a = parse_rational(spec.fixed_a);
      rep.a = rational_to_string(a);
      break;
    case ADomain::Free:
    case ADomain::TParam:
      if (!param)
        throw usage_error(std::string(spec.id) + " needs a parameter");
      a = *param;
      rep.a = rational_to_string(a);
      break;
  }

  if (spec.domain == ADomain::Free || spec.domain == ADomain::TParam) {
    if (!is_p_integral(a, ws.p())) {
      rep.status = Status::skipped_precondition;
      return rep;
    }
    if (spec.domain == ADomain::Free) {
      u64 fa = fractional_residue(a, ws.p());
      for (const Rational& ex : detail::parse_exclusions(spec.excluded)) {
        if (fa == fractional_residue(ex, ws.p())) {
          rep.status = Status::skipped_precondition;
          return rep;
        }
      }
    }
  }

  detail::LhsRhs v = detail::evaluate_entry(ws, spec.id, a);
  Residue lhs = v.lhs.truncated(pe);
  Residue rhs = v.rhs.truncated(pe);
  rep.lhs = lhs.str();
  rep.rhs = rhs.str();
  u128 diff = (lhs - rhs).value();
  int val = 0;
  if (diff == 0) {
    val = pe;
  } else {
    while (diff % ws.p() == 0) {
      diff /= ws.p();
      ++val;
    }
  }
  rep.diff_valuation = val;
  rep.status = val >= pe ? Status::pass : Status::fail;
  return rep;
}

// One-off verification; builds its own workspace.
inline CongruenceReport verify(const std::string& id, u64 p,
                               const Rational* param = nullptr) {
  PrimeWorkspace ws(p);
  return verify_with(ws, find_theorem(id), param);
}

// ---------------------------------------------------------------------------
// Exact polynomial identities checked over Q at seeded random points.

struct IdentityReport {
  std::string id;
  int points_checked = 0;
  int points_skipped = 0;
  bool pass = true;
};

inline const std::vector<std::string>& identity_registry() {
  static const std::vector<std::string> ids = {
      "LEM_2_3", "LEM_4_1", "EQ_3_2", "EQ_5_1",
      "EQ_6_1",  "EQ_6_2",  "EQ_7_1"};
  return ids;
}

namespace detail {

inline Rational sum_s(const Rational& a, const Rational& b, unsigned long n) {
  // S_n(a,b) = sum binom(a,k)binom(-1-a,k)/(bk+1)
  Rational acc(0);
  for (unsigned long k = 0; k <= n; ++k) {
    Rational den = b * Rational(static_cast<long>(k)) + 1;
    if (den == 0)
      throw degenerate_denominator("bk+1 = 0 at k = " + std::to_string(k));
    acc += binomial(a, k) * binomial(-1 - a, k) / den;
  }
  return acc;
}

inline Rational sum_a(const Rational& a, unsigned long n) {
  // A_n(a) = sum_{k>=1} binom(a,k)binom(-1-a,k)/k
  Rational acc(0);
  for (unsigned long k = 1; k <= n; ++k)
    acc += binomial(a, k) * binomial(-1 - a, k) /
           Rational(static_cast<long>(k));
  return acc;
}

inline Rational sum_f(const Rational& a, const Rational& b, unsigned long n) {
  // f_n(a,b) = sum binom(a,k)/(k binom(b,k))
  Rational acc(0);
  for (unsigned long k = 1; k <= n; ++k) {
    Rational cb = binomial(b, k);
    if (cb == 0)
      throw degenerate_denominator("binom(b,k) = 0 at k = " +
                                   std::to_string(k));
    acc += binomial(a, k) / (Rational(static_cast<long>(k)) * cb);
  }
  return acc;
}

inline Rational sum_geom(const Rational& a, const Rational& x,
                         unsigned long n) {
  Rational acc(0), xpow(1);
  for (unsigned long k = 0; k <= n; ++k) {
    acc += binomial(a, k) * xpow;
    xpow *= x;
  }
  return acc;
}

// Throws degenerate_denominator on poles; returns equality.
inline bool identity_holds(const std::string& id, unsigned long n,
                           const Rational& a, const Rational& b,
                           const Rational& x) {
  if (id == "LEM_2_3") {
    Rational acc(0);
    for (unsigned long k = 0; k <= n; ++k)
      acc += (Rational(static_cast<long>(k)) - a * (a + 1)) * binomial(a, k) *
             binomial(-1 - a, k);
    return acc == -a * (a + 1) * binomial(a - 1, n) * binomial(-2 - a, n);
  }
  if (id == "LEM_4_1") {
    Rational acc(0);
    for (unsigned long k = 0; k <= n; ++k) {
      long kk = static_cast<long>(k);
      acc += binomial(a, k) * binomial(-1 - a, k) *
             ((2 * a * (a + 1) + 1) * Rational(kk) - a * (a + 1)) /
             Rational(4 * kk * kk - 1);
    }
    return acc == a * (a + 1) / Rational(static_cast<long>(2 * n + 1)) *
                      binomial(a - 1, n) * binomial(-2 - a, n);
  }
  if (id == "EQ_3_2") {
    Rational lhs = (a * b + 1) * sum_s(a, b, n) -
                   (a * b - 1) * sum_s(a - 1, b, n);
    return lhs == Rational(2) * binomial(a - 1, n) * binomial(-a - 1, n);
  }
  if (id == "EQ_5_1") {
    if (a == 0) throw degenerate_denominator("a = 0");
    Rational lhs = sum_a(a, n) - sum_a(a - 1, n);
    return lhs == Rational(2) / a * binomial(a - 1, n) * binomial(-a - 1, n) -
                      Rational(2) / a;
  }
  if (id == "EQ_6_1") {
    try {
      lerch_ratio_sum(a, b, n);  // asserts the closed form internally
    } catch (const degenerate_denominator&) {
      throw;
    } catch (const error&) {
      return false;
    }
    return true;
  }
  if (id == "EQ_6_2") {
    if (b + 1 - a == 0) throw degenerate_denominator("b + 1 - a = 0");
    Rational cb = binomial(b, n);
    if (cb == 0) throw degenerate_denominator("binom(b,n) = 0");
    Rational lhs = sum_f(a, b, n) - sum_f(a - 1, b, n);
    return lhs == Rational(1) / (b + 1 - a) -
                      binomial(a - 1, n) / ((b + 1 - a) * cb);
  }
  if (id == "EQ_7_1") {
    Rational lhs = sum_geom(a, x, n) - (x + 1) * sum_geom(a - 1, x, n);
    return lhs == -binomial(a - 1, n) * rational_pow(x, static_cast<long>(n) + 1);
  }
  throw usage_error("unknown identity id: " + id);
}

}  // namespace detail

// Check an exact identity for every n <= n_max at seeded random rational
// points; points that hit a pole are skipped and counted.
inline IdentityReport verify_identity(const std::string& id, unsigned long n_max,
                                      int points, u64 seed) {
  IdentityReport rep;
  rep.id = id;
  u64 h = 1469598103934665603ull;  // FNV-1a, so seeding is portable
  for (char c : id) {
    h ^= u64(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  SplitMix rng(seed ^ h);
  for (int i = 0; i < points; ++i) {
    Rational a = random_parameter(rng, 0);
    Rational b = random_parameter(rng, 0);
    Rational x = random_parameter(rng, 0);
    try {
      for (unsigned long n = 0; n <= n_max; ++n) {
        if (!detail::identity_holds(id, n, a, b, x)) {
          rep.pass = false;
          return rep;
        }
      }
      ++rep.points_checked;
    } catch (const degenerate_denominator&) {
      ++rep.points_skipped;
    }
  }
  return rep;
}

}  // namespace supercong

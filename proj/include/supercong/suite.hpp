#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/rational.hpp"
#include "supercong/registry.hpp"
#include "supercong/rng.hpp"

namespace supercong {

constexpr u64 default_seed = 0x5eedc0de;

struct SweepConfig {
  u64 prime_lo = 5;
  u64 prime_hi = 199;
  std::vector<Rational> a_set = {Rational(-1, 2), Rational(-1, 3),
                                 Rational(-1, 4), Rational(-1, 6)};
  int random_count = 0;
  std::vector<Rational> t_set = {Rational(0), Rational(1), Rational(2),
                                 Rational(-1, 3)};
  std::vector<std::string> ids;  // empty = full registry
  int precision_override = 0;    // 0 = each statement's native exponent
  u64 seed = default_seed;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool fail_fast = false;
};

struct SuiteResult {
  std::vector<CongruenceReport> reports;
  std::size_t passes = 0, fails = 0, skips = 0;
  // diagnostic only: passing reports whose capped valuation sits exactly at
  // the modulus exponent
  std::size_t valuation_at_modulus = 0;
};

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

namespace detail {

inline std::vector<const TheoremSpec*> select_entries(
    const std::vector<std::string>& ids) {
  std::vector<const TheoremSpec*> out;
  if (ids.empty()) {
    for (const auto& t : theorem_registry()) out.push_back(&t);
    return out;
  }
  for (const auto& id : ids) out.push_back(&find_theorem(id));
  return out;
}

inline std::vector<CongruenceReport> run_prime(
    u64 p, const std::vector<const TheoremSpec*>& entries,
    const SweepConfig& cfg) {
  PrimeWorkspace ws(p);
  std::vector<Rational> as = cfg.a_set;
  if (cfg.random_count > 0) {
    SplitMix rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * p));
    for (int i = 0; i < cfg.random_count; ++i)
      as.push_back(random_parameter(rng, p));
  }
  std::vector<CongruenceReport> out;
  for (const TheoremSpec* spec : entries) {
    switch (spec->domain) {
      case ADomain::None:
      case ADomain::Fixed:
        out.push_back(verify_with(ws, *spec, nullptr, cfg.precision_override));
        break;
      case ADomain::TParam:
        for (const Rational& t : cfg.t_set)
          out.push_back(verify_with(ws, *spec, &t, cfg.precision_override));
        break;
      case ADomain::Free:
        for (const Rational& a : as)
          out.push_back(verify_with(ws, *spec, &a, cfg.precision_override));
        break;
    }
  }
  return out;
}

}  // namespace detail

// Cartesian sweep over (entry, prime, parameter) cells. Primes are handled
// in parallel, one workspace per prime; the merged report is sorted by
// (theorem_id, p, a), so output does not depend on scheduling. With
// fail_fast the report is truncated after the first prime (in order) that
// produced a failure.
inline SuiteResult run_suite(const SweepConfig& cfg) {
  if (cfg.prime_lo < 5) throw usage_error("prime range must start at >= 5");
  std::vector<u64> ps = primes_in(cfg.prime_lo, cfg.prime_hi);
  std::vector<const TheoremSpec*> entries = detail::select_entries(cfg.ids);

  std::vector<std::vector<CongruenceReport>> slots(ps.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_fail{SIZE_MAX};
  unsigned n_workers = cfg.workers ? cfg.workers
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<std::size_t>(n_workers, std::max<std::size_t>(ps.size(), 1));

  std::exception_ptr first_error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= ps.size()) return;
      if (cfg.fail_fast && i > first_fail.load()) continue;
      try {
        slots[i] = detail::run_prime(ps[i], entries, cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      for (const auto& r : slots[i])
        if (r.status == Status::fail) {
          std::size_t cur = first_fail.load();
          while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
          }
          break;
        }
    }
  };

  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SuiteResult res;
  std::size_t cut = cfg.fail_fast ? first_fail.load() : SIZE_MAX;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i > cut) break;
    for (auto& r : slots[i]) res.reports.push_back(std::move(r));
  }
  std::stable_sort(res.reports.begin(), res.reports.end(),
                   [](const CongruenceReport& x, const CongruenceReport& y) {
                     return std::tie(x.theorem_id, x.p, x.a) <
                            std::tie(y.theorem_id, y.p, y.a);
                   });
  for (const auto& r : res.reports) {
    if (r.status == Status::pass) {
      ++res.passes;
      if (r.diff_valuation == r.modulus_exponent) ++res.valuation_at_modulus;
    } else if (r.status == Status::fail) {
      ++res.fails;
    } else {
      ++res.skips;
    }
  }
  return res;
}

// --- serialization ---------------------------------------------------------
// Fields, in order: theorem_id, p, a, modulus_exponent, lhs, rhs, status,
// diff_valuation. All report content is [A-Za-z0-9_/-], so neither format
// needs escaping.

inline std::string reports_to_json(const std::vector<CongruenceReport>& rs) {
  std::string out = "[";
  bool first = true;
  for (const auto& r : rs) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {\"theorem_id\":\"" + r.theorem_id + "\"";
    out += ",\"p\":" + std::to_string(r.p);
    out += ",\"a\":\"" + r.a + "\"";
    out += ",\"modulus_exponent\":" + std::to_string(r.modulus_exponent);
    out += ",\"lhs\":\"" + r.lhs + "\"";
    out += ",\"rhs\":\"" + r.rhs + "\"";
    out += ",\"status\":\"" + std::string(status_name(r.status)) + "\"";
    out += ",\"diff_valuation\":" + std::to_string(r.diff_valuation);
    out += "}";
  }
  out += first ? "]\n" : "\n]\n";
  return out;
}

inline std::string reports_to_csv(const std::vector<CongruenceReport>& rs) {
  std::string out =
      "theorem_id,p,a,modulus_exponent,lhs,rhs,status,diff_valuation\n";
  for (const auto& r : rs) {
    out += r.theorem_id + "," + std::to_string(r.p) + "," + r.a + "," +
           std::to_string(r.modulus_exponent) + "," + r.lhs + "," + r.rhs +
           "," + status_name(r.status) + "," +
           std::to_string(r.diff_valuation) + "\n";
  }
  return out;
}

inline std::string reports_to_table(const std::vector<CongruenceReport>& rs,
                                    const SuiteResult& res, u64 seed) {
  std::ostringstream os;
  os << "# seed=" << seed << "\n";
  os << std::left << std::setw(14) << "theorem_id" << std::setw(6) << "p"
     << std::setw(10) << "a" << std::setw(4) << "e" << std::setw(16) << "lhs"
     << std::setw(16) << "rhs" << std::setw(22) << "status"
     << "v(diff)\n";
  for (const auto& r : rs) {
    os << std::left << std::setw(14) << r.theorem_id << std::setw(6) << r.p
       << std::setw(10) << r.a << std::setw(4) << r.modulus_exponent
       << std::setw(16) << r.lhs << std::setw(16) << r.rhs << std::setw(22)
       << status_name(r.status) << r.diff_valuation << "\n";
  }
  os << "# pass=" << res.passes << " fail=" << res.fails
     << " skip=" << res.skips << " valuation_at_modulus="
     << res.valuation_at_modulus << "\n";
  return os.str();
}

}  // namespace supercong

// Command-line front end: congruence sweeps, single verifications,
// sequence/sum inspection, brute-force oracle cross-checks.
//
// Exit codes: 0 = all pass/skip, 1 = at least one verification failure,
// 2 = usage or configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "supercong/supercong.hpp"

namespace {

using namespace supercong;

// "LO..=HI" (inclusive), e.g. "5..=499".
std::pair<u64, u64> parse_prime_range(const std::string& s) {
  std::size_t pos = s.find("..=");
  if (pos == std::string::npos)
    throw usage_error("prime range must look like 5..=499");
  u64 lo = std::stoull(s.substr(0, pos));
  u64 hi = std::stoull(s.substr(pos + 3));
  if (lo < 5) throw usage_error("prime range must start at >= 5");
  if (hi < lo) throw usage_error("empty prime range");
  return {lo, hi};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (comma > pos) out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

u64 env_seed() {
  if (const char* v = std::getenv("SUPERCONG_SEED")) return std::stoull(v);
  return default_seed;
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw usage_error("cannot open " + out_file);
    f << text;
  }
}

int cmd_verify(const std::string& primes, const std::string& a_arg,
               const std::string& t_arg, const std::string& ids_arg,
               const std::string& format, u64 seed, unsigned workers,
               bool fail_fast, int precision, const std::string& out_file) {
  SweepConfig cfg;
  std::tie(cfg.prime_lo, cfg.prime_hi) = parse_prime_range(primes);
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.fail_fast = fail_fast;
  cfg.precision_override = precision;
  if (!a_arg.empty()) {
    cfg.a_set.clear();
    cfg.random_count = 0;
    for (const std::string& tok : split_commas(a_arg)) {
      if (tok.rfind("random:", 0) == 0) {
        cfg.random_count += std::stoi(tok.substr(7));
        if (cfg.random_count < 0) throw usage_error("random count < 0");
      } else {
        cfg.a_set.push_back(parse_rational(tok));
      }
    }
  }
  if (!t_arg.empty()) {
    cfg.t_set.clear();
    for (const std::string& tok : split_commas(t_arg))
      cfg.t_set.push_back(parse_rational(tok));
  }
  if (!ids_arg.empty()) cfg.ids = split_commas(ids_arg);
  if (format != "json" && format != "csv" && format != "table")
    throw usage_error("format must be json, csv or table");

  std::cerr << "[supercong] seed=" << seed << " primes=" << cfg.prime_lo
            << "..=" << cfg.prime_hi << "\n";
  SuiteResult res = run_suite(cfg);
  if (format == "json") {
    emit(reports_to_json(res.reports), out_file);
  } else if (format == "csv") {
    emit(reports_to_csv(res.reports), out_file);
  } else {
    emit(reports_to_table(res.reports, res, seed), out_file);
  }
  std::cerr << "[supercong] pass=" << res.passes << " fail=" << res.fails
            << " skip=" << res.skips << "\n";
  return res.fails == 0 ? 0 : 1;
}

int cmd_seq(const std::string& name, unsigned long n, u64 p, int e) {
  SequenceCache cache;
  if (p == 0) {
    if (name == "bernoulli") {
      std::cout << rational_to_string(cache.bernoulli(n)) << "\n";
    } else if (name == "euler") {
      std::cout << cache.euler(n).get_str() << "\n";
    } else if (name == "u") {
      std::cout << cache.u_value(n).get_str() << "\n";
    } else if (name == "s") {
      std::cout << cache.s_value(n).get_str() << "\n";
    } else if (name == "harmonic") {
      std::cout << rational_to_string(harmonic_exact(n)) << "\n";
    } else if (name == "fermatq") {
      throw usage_error("fermatq needs --p");
    } else {
      throw usage_error("unknown sequence: " + name);
    }
    return 0;
  }
  ModulusContext ctx(p, e);
  ModularSequences seq(p);
  if (name == "bernoulli") {
    std::cout << seq.bernoulli(n) << " (mod " << p << ")\n";
  } else if (name == "euler") {
    std::cout << seq.euler(n) << " (mod " << p << ")\n";
  } else if (name == "u") {
    std::cout << seq.u_value(n) << " (mod " << p << ")\n";
  } else if (name == "s") {
    std::cout << seq.s_value(n) << " (mod " << p << ")\n";
  } else if (name == "harmonic") {
    Residue h = harmonic_mod(ctx, n, e);
    std::cout << h.str() << " (mod " << u128_to_string(h.modulus()) << ")\n";
  } else if (name == "fermatq") {
    Residue q = fermat_quotient(ctx, i64(n));
    std::cout << q.str() << " (mod " << u128_to_string(q.modulus()) << ")\n";
  } else {
    throw usage_error("unknown sequence: " + name);
  }
  return 0;
}

int cmd_sum(u64 p, const std::string& a_str, const std::string& family,
            const std::string& weight_name, int e) {
  ModulusContext ctx(p, e);
  Weight w;
  if (weight_name == "one") w = Weight::One;
  else if (weight_name == "timesk") w = Weight::TimesK;
  else if (weight_name == "inv2kplus1") w = Weight::Inv2kPlus1;
  else if (weight_name == "inv2kminus1") w = Weight::Inv2kMinus1;
  else if (weight_name == "invk") w = Weight::InvK;
  else if (weight_name == "affine") w = Weight::AffineOverOdd;
  else if (weight_name == "mixed") w = Weight::MixedL42;
  else throw usage_error("unknown weight: " + weight_name);

  Residue r = [&] {
    if (family == "central") {
      if (a_str.empty()) throw usage_error("central family needs --a");
      return central_sum(parse_rational(a_str), w, ctx);
    }
    if (family == "16k") return ratio_form_sum(Family::F16, w, ctx);
    if (family == "27k") return ratio_form_sum(Family::F27, w, ctx);
    if (family == "64k") return ratio_form_sum(Family::F64, w, ctx);
    if (family == "432k") return ratio_form_sum(Family::F432, w, ctx);
    throw usage_error("unknown family: " + family);
  }();
  std::cout << r.str() << " (mod " << u128_to_string(r.modulus())
            << ", balanced " << i128_to_string(r.balanced()) << ")\n";
  return 0;
}

int cmd_oracle(u64 p, const std::string& a_str, const std::string& target) {
  auto t = oracle_target_from_name(target);
  if (!t) throw usage_error("unknown oracle target: " + target);
  if (p > oracle_max_prime)
    throw usage_error("oracle refuses p > 13 (exact tables get too large)");
  if (*t == OracleTarget::Phi && p > oracle_max_prime_phi)
    throw usage_error("oracle refuses p > 7 for phi (index p^2(p-1))");
  SequenceCache cache;
  OracleOutcome o = oracle_cross_check(p, parse_rational(a_str), *t, cache);
  std::cout << "exact    = " << o.exact_value << "\n";
  std::cout << "pipeline = " << o.pipeline_value << " (mod p^" << o.exponent
            << ")\n";
  std::cout << (o.match ? "PASS" : "FAIL") << "\n";
  return o.match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic verification of super-congruences for truncated "
               "central binomial sums"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand(
      "verify", "sweep the congruence catalog over primes and parameters");
  std::string primes = "5..=199", a_arg, t_arg, ids_arg, format = "table",
              out_file;
  u64 seed = env_seed();
  unsigned workers = 0;
  bool fail_fast = false;
  int precision = 0;
  verify->add_option("--primes", primes, "inclusive range, e.g. 5..=499");
  verify->add_option("--a", a_arg,
                     "comma list of rationals and/or random:N draws");
  verify->add_option("--t", t_arg, "comma list of t values for pt-families");
  verify->add_option("--theorems", ids_arg, "comma list of catalog ids");
  verify->add_option("--format", format, "json | csv | table");
  verify->add_option("--seed", seed, "seed for random parameter draws");
  verify->add_option("--workers", workers, "worker threads (0 = auto)");
  verify->add_flag("--fail-fast", fail_fast,
                   "stop after the first failing prime");
  verify->add_option("--precision", precision,
                     "cap every check at this modulus exponent");
  verify->add_option("--out", out_file, "write the report to a file");

  auto* seq = app.add_subcommand("seq", "print a sequence value");
  std::string seq_name;
  unsigned long seq_n = 0;
  u64 seq_p = 0;
  int seq_e = 3;
  seq->add_option("name", seq_name,
                  "bernoulli | euler | u | s | fermatq | harmonic")
      ->required();
  seq->add_option("n", seq_n, "index (or base, for fermatq)")->required();
  seq->add_option("--p", seq_p, "reduce mod this prime");
  seq->add_option("--e", seq_e, "context precision exponent (default 3)");

  auto* sum = app.add_subcommand("sum", "print one truncated sum");
  std::string sum_a, sum_family = "central", sum_weight = "one";
  u64 sum_p = 0;
  int sum_e = 3;
  sum->add_option("--p", sum_p, "prime")->required();
  sum->add_option("--a", sum_a, "rational parameter (central family)");
  sum->add_option("--family", sum_family, "central | 16k | 27k | 64k | 432k");
  sum->add_option("--weight", sum_weight,
                  "one | timesk | inv2kplus1 | inv2kminus1 | invk | affine | "
                  "mixed");
  sum->add_option("--e", sum_e, "precision exponent (default 3)");

  auto* oracle = app.add_subcommand(
      "oracle", "cross-check a sum against the exact-rational oracle");
  std::string or_a, or_target = "one";
  u64 or_p = 5;
  oracle->add_option("--p", or_p, "prime (<= 13; <= 7 for phi)")->required();
  oracle->add_option("--a", or_a, "rational parameter")->required();
  oracle->add_option("--target", or_target,
                     "one | timesk | inv2kplus1 | inv2kminus1 | invk | affine "
                     "| mixed | altk | geom | phi");

  try {
    app.parse(argc, argv);
    if (verify->parsed())
      return cmd_verify(primes, a_arg, t_arg, ids_arg, format, seed, workers,
                        fail_fast, precision, out_file);
    if (seq->parsed()) return cmd_seq(seq_name, seq_n, seq_p, seq_e);
    if (sum->parsed()) return cmd_sum(sum_p, sum_a, sum_family, sum_weight,
                                      sum_e);
    if (oracle->parsed()) return cmd_oracle(or_p, or_a, or_target);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const supercong::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

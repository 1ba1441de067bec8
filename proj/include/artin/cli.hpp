#pragma once

// Command dispatch for the `artin` tool. Parsing lives in tools/artin.cpp;
// everything here is testable without a process boundary.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "artin/census.hpp"
#include "artin/density.hpp"
#include "artin/error.hpp"
#include "artin/expsums.hpp"
#include "artin/indicator.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"
#include "artin/periods.hpp"
#include "artin/report.hpp"

namespace artin {

enum class Command {
  period,
  reptend,
  census,
  density,
  totient_sums,
  expsum,
  verify_lemma1,
  verify_lemma33,
  wieferich,
};

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"period", Command::period},           {"reptend", Command::reptend},
      {"census", Command::census},           {"density", Command::density},
      {"totient-sums", Command::totient_sums}, {"expsum", Command::expsum},
      {"verify-lemma1", Command::verify_lemma1}, {"verify-lemma33", Command::verify_lemma33},
      {"wieferich", Command::wieferich},
  };
  return names;
}

inline std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name;
  }
  return "?";
}

inline std::optional<Command> parse_command(const std::string& s) {
  for (const auto& [name, cmd] : command_names()) {
    if (name == s) return cmd;
  }
  return std::nullopt;
}

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  return std::nullopt;
}

enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,
  kExitVerification = 2,
  kExitFinding = 3,
  kExitUsage = 64,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::period;
  u64 base = 10;
  u64 limit = 0;  // 0 selects the per-command default
  u64 p = 0;
  u64 s = 1;
  u64 truncation = kDefaultTruncation;
  Format format = Format::table;
  u64 seed = 1;
  unsigned threads = 1;
  bool short_interval = false;
  bool classical = false;
  bool allow_square = false;
  bool force_digits = false;
};

namespace detail {

inline u64 default_limit(Command c) {
  switch (c) {
    case Command::reptend:
    case Command::census:
      return 100;
    case Command::totient_sums:
      return 1'000'000;
    case Command::expsum:
      return 500;
    case Command::verify_lemma1:
      return 200;
    case Command::verify_lemma33:
      return 300;
    case Command::wieferich:
      return 1000;
    default:
      return 0;
  }
}

inline u64 limit_cap(Command c) {
  switch (c) {
    case Command::reptend:
    case Command::census:
    case Command::totient_sums:
      return kCensusMaxLimit;
    case Command::expsum:
      return kScanMaxPrime;
    case Command::verify_lemma1:
      return kPsiCensusMaxPrime;
    case Command::verify_lemma33:
      return 2000;
    case Command::wieferich:
      return kWieferichMaxLimit;
    default:
      return 0;
  }
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

}  // namespace detail

/// Fills defaults and checks every numeric field against its cap.
inline RunConfig validated(RunConfig c) {
  using detail::require;
  if (c.limit == 0) c.limit = detail::default_limit(c.command);
  require(c.threads >= 1, "--threads must be positive");
  require(c.base >= 2, "--base must be >= 2");
  require(c.truncation >= 100 && c.truncation <= 1'000'000'000, "--trunc must lie in [100, 1e9]");
  const u64 cap = detail::limit_cap(c.command);
  if (cap != 0) {
    require(c.limit >= 2, "--limit must be >= 2");
    require(c.limit <= cap, "--limit " + std::to_string(c.limit) + " exceeds cap " + std::to_string(cap) + " for " +
                                command_name(c.command));
  }
  if (c.command == Command::census && c.short_interval) {
    require(2 * c.limit <= kCensusMaxLimit, "--limit too large for --short-interval (2x must be <= 1e8)");
  }
  if (c.command == Command::period) {
    require(c.p >= 2, "period requires --p (a prime)");
    require(c.base <= 65535, "--base must be <= 65535 for digit output");
  }
  if (c.command == Command::expsum && c.p != 0) {
    require(c.p >= 3 && c.p <= kScanMaxPrime, "--p must lie in [3, 1e4] for expsum");
  }
  return c;
}

namespace detail {

inline std::vector<Field> config_fields(const RunConfig& c) {
  // Thread count is excluded: output must not depend on it.
  std::vector<Field> f{{"command", command_name(c.command)}};
  switch (c.command) {
    case Command::period:
      f.insert(f.end(), {{"p", c.p}, {"base", c.base}, {"force_digits", c.force_digits}});
      break;
    case Command::reptend:
      f.insert(f.end(), {{"base", c.base}, {"limit", c.limit}, {"seed", c.seed}});
      break;
    case Command::census:
      f.insert(f.end(), {{"base", c.base},
                         {"limit", c.limit},
                         {"trunc", c.truncation},
                         {"short_interval", c.short_interval},
                         {"classical", c.classical}});
      break;
    case Command::density:
      f.insert(f.end(), {{"base", c.base},
                         {"trunc", c.truncation},
                         {"classical", c.classical},
                         {"allow_square", c.allow_square}});
      break;
    case Command::totient_sums:
      f.insert(f.end(), {{"limit", c.limit}, {"trunc", c.truncation}});
      break;
    case Command::expsum:
      f.insert(f.end(), {{"p", c.p}, {"s", c.s}, {"limit", c.limit}});
      break;
    case Command::verify_lemma1:
    case Command::verify_lemma33:
      f.insert(f.end(), {{"limit", c.limit}});
      break;
    case Command::wieferich:
      f.insert(f.end(), {{"base", c.base}, {"limit", c.limit}});
      break;
  }
  return f;
}

inline constexpr const char* kFiniteRangeNote =
    "finite-range consistency check only: asymptotic lower bounds and asymptotic equalities are not "
    "reproducible at desk scale";

inline Report run_period(const RunConfig& c) {
  PeriodOptions opts;
  opts.force_digits = c.force_digits;
  const auto rec = period_digits(c.p, c.base, opts);
  Report r;
  r.add("p", rec.p);
  r.add("d", rec.d);
  r.add("digits", rec.digits_extracted ? rec.digit_string() : std::string{});
  r.add("maximal", rec.maximal);
  r.add("base", rec.base);
  r.add("digits_extracted", rec.digits_extracted);
  return r;
}

inline Report run_reptend(const RunConfig& c) {
  ReptendScanOptions opts;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const auto hits = full_reptend_scan(c.limit, c.base, opts);
  Report r;
  r.add("base", c.base);
  r.add("limit", c.limit);
  r.add("count", static_cast<u64>(hits.size()));
  r.columns = {"p"};
  for (u64 p : hits) r.rows.push_back({p});
  return r;
}

inline Report run_census(const RunConfig& c) {
  CensusOptions opts;
  opts.interval = c.short_interval ? CensusInterval::dyadic : CensusInterval::up_to_x;
  opts.truncation = c.truncation;
  opts.variant = c.classical ? CoefficientVariant::classical : CoefficientVariant::printed;
  opts.threads = c.threads;
  const auto rep = census(c.base, c.limit, opts);
  Report r;
  r.add("u", rep.u);
  r.add("x", rep.x);
  r.add("lo", rep.lo);
  r.add("hi", rep.hi);
  r.add("pi_x", rep.pi_x);
  r.add("pi_u_x", rep.pi_u_x);
  r.add("li_x", rep.li_x);
  r.add("delta_u", rep.delta_u);
  r.add("predicted", rep.predicted);
  r.add("ratio", rep.ratio);
  r.add("ratio_over_delta", rep.delta_u > 0 ? rep.ratio / rep.delta_u : 0.0);
  std::string skipped;
  for (u64 p : rep.skipped) skipped += (skipped.empty() ? "" : " ") + std::to_string(p);
  r.add("skipped", skipped);
  r.add("trunc", rep.truncation);
  r.add("tail_bound", rep.tail_bound);
  r.notes.emplace_back(kFiniteRangeNote);
  return r;
}

inline Report run_density(const RunConfig& c) {
  DensityOptions opts;
  opts.truncation = c.truncation;
  opts.variant = c.classical ? CoefficientVariant::classical : CoefficientVariant::printed;
  opts.allow_square = c.allow_square;
  opts.threads = c.threads;
  const auto d = delta(c.base, opts);
  const auto& k = d.decomposition;
  Report r;
  r.add("u", d.u);
  r.add("k", static_cast<u64>(k.k));
  r.add("root", k.root);
  r.add("s", k.s);
  r.add("t", k.t);
  r.add("mu_s", static_cast<std::int64_t>(k.mu_s));
  r.add("s_mod4", static_cast<u64>(k.s_mod4));
  r.add("case", static_cast<std::int64_t>(d.case_branch));
  r.add("a_k", d.a_k);
  r.add("correction", d.correction);
  r.add("delta", d.delta);
  r.add("trunc", d.truncation);
  r.add("tail_bound", d.tail_bound);
  r.add("variant", std::string(c.classical ? "classical" : "printed"));
  return r;
}

inline Report run_totient(const RunConfig& c) {
  const auto t = totient_sums(c.limit, c.truncation, c.threads);
  Report r;
  r.add("x", t.x);
  r.add("prime_count", t.prime_count);
  r.add("sum_ratio_pm1", t.sum_ratio_pm1);
  r.add("sum_ratio_p", t.sum_ratio_p);
  r.add("difference", t.difference);
  r.add("artin", t.artin);
  r.add("li_x", t.li_x);
  r.add("predicted", t.predicted);
  r.add("residual_pm1", t.residual_pm1);
  r.add("residual_p", t.residual_p);
  r.add("relative_residual_pm1", t.relative_residual_pm1);
  r.add("trunc", t.truncation);
  r.add("tail_bound", t.tail_bound);
  r.notes.emplace_back(kFiniteRangeNote);
  return r;
}

inline Report run_expsum_single(const RunConfig& c) {
  if (!is_prime(c.p)) throw DomainError("expsum: --p must be prime");
  const u64 tau = find_primitive_root(c.p);
  const auto sample = exp_sum_coprime(c.p, tau, c.s);
  const auto mx = max_over_s(c.p, tau);
  const auto shift = shift_difference_scan(c.p, tau);
  Report r;
  r.add("p", c.p);
  r.add("tau", tau);
  r.add("s", c.s);
  r.add("re", sample.value.real());
  r.add("im", sample.value.imag());
  r.add("modulus", sample.modulus);
  r.add("ratio_78", sample.ratio_78);
  r.add("ratio_sqrt", sample.ratio_sqrt);
  r.add("s_star", mx.s_star);
  r.add("max_modulus", mx.max_modulus);
  r.add("max_ratio_78", mx.ratio_78);
  r.add("max_ratio_sqrt", mx.ratio_sqrt);
  r.add("shift_max_difference", shift.max_difference);
  r.add("shift_ratio", shift.ratio);
  r.add("set_equal_count", shift.set_equal_count);
  r.add("set_equality_rate", shift.set_equality_rate());
  if (mx.violates_78()) {
    r.findings.push_back("max_s |V_p(s)| exceeds p^(15/16) at p=" + std::to_string(c.p));
  }
  r.notes.emplace_back("set equality {tau^n} = {s tau^n} over gcd(n,p-1)=1 is reported, not assumed");
  return r;
}

inline Report run_expsum_sweep(const RunConfig& c) {
  const auto rows = max_over_s_sweep(10, c.limit, c.threads);
  const bool with_shift = c.limit <= 500;
  Report r;
  r.columns = {"p", "tau", "s_star", "max_modulus", "bound_78", "ratio_78", "ratio_sqrt"};
  if (with_shift) {
    r.columns.insert(r.columns.end(), {"shift_max_difference", "shift_ratio", "set_equal_count"});
  }
  double worst = 0.0;
  u64 worst_p = 0;
  u64 violations = 0;
  for (const auto& m : rows) {
    std::vector<Value> row{m.p, m.tau, m.s_star, m.max_modulus, bound_78(m.p), m.ratio_78, m.ratio_sqrt};
    if (with_shift) {
      const auto sh = shift_difference_scan(m.p, m.tau);
      row.insert(row.end(), {sh.max_difference, sh.ratio, sh.set_equal_count});
    }
    r.rows.push_back(std::move(row));
    if (m.ratio_78 > worst) {
      worst = m.ratio_78;
      worst_p = m.p;
    }
    if (m.violates_78()) {
      ++violations;
      r.findings.push_back("max_s |V_p(s)| = " + detail::format_double(m.max_modulus, 17) + " exceeds p^(15/16) at p=" +
                           std::to_string(m.p));
    }
  }
  r.add("pmin", u64{10});
  r.add("pmax", c.limit);
  r.add("primes", static_cast<u64>(rows.size()));
  r.add("worst_ratio_78", worst);
  r.add("worst_p", worst_p);
  r.add("violations", violations);
  r.notes.emplace_back("bounds stated up to an implied constant are evaluated with constant 1");
  return r;
}

inline Report run_verify_lemma1(const RunConfig& c) {
  const auto rep = psi_census_check(c.limit, c.threads);
  Report r;
  r.add("pmax", rep.pmax);
  r.add("primes", static_cast<u64>(rep.per_prime.size()));
  r.add("pairs_checked", rep.pairs_checked);
  r.add("mismatches", rep.mismatches);
  r.add("count_mismatches", rep.count_mismatches);
  r.columns = {"p", "tau", "primitive_count", "phi_pm1"};
  for (const auto& pp : rep.per_prime) r.rows.push_back({pp.p, pp.tau, pp.primitive_count, pp.phi_pm1});
  return r;
}

inline constexpr double kIdentityTolerance = 1e-8;

inline Report run_verify_lemma33(const RunConfig& c) {
  std::vector<u64> primes;
  for_each_prime(2, c.limit, [&](u64 p) { primes.push_back(p); });
  const auto reps = parallel_chunks(primes.size(), c.threads,
                                    [&](std::size_t i) { return mobius_sum_bound_check(next_prime(primes[i]), primes[i]); });
  Report r;
  r.columns = {"p",          "q",          "max_identity_error", "max_printed_error", "printed_witness_t",
               "printed_witness_d", "max_bound_ratio", "t_at_max", "bound_violations"};
  double worst_identity = 0.0, worst_ratio = 0.0;
  u64 violations = 0, checked = 0, witnesses = 0;
  for (const auto& b : reps) {
    r.rows.push_back({b.p, b.q, b.max_identity_error, b.max_printed_error, b.printed_witness_t, b.printed_witness_d,
                      b.max_ratio, b.t_at_max, static_cast<u64>(b.violations.size())});
    worst_identity = std::max(worst_identity, b.max_identity_error);
    worst_ratio = std::max(worst_ratio, b.max_ratio);
    violations += b.violations.size();
    checked += b.checked;
    if (b.printed_witness_t != 0) ++witnesses;
  }
  r.add("pmax", c.limit);
  r.add("triples_checked", checked);
  r.add("max_identity_error", worst_identity);
  r.add("identity_tolerance", kIdentityTolerance);
  r.add("printed_form_mismatching_primes", witnesses);
  r.add("max_bound_ratio", worst_ratio);
  r.add("bound_violations", violations);
  if (worst_identity >= kIdentityTolerance) {
    throw VerificationError("verify-lemma33: direct and closed-form sums differ by " +
                            detail::format_double(worst_identity, 17));
  }
  if (witnesses != 0) {
    r.findings.push_back("closed form with numerator omega^{dt} - omega^{dtp} disagrees with the direct sum at " +
                         std::to_string(witnesses) + " primes (terms with d > 1)");
  }
  if (violations != 0) {
    r.findings.push_back("bound |sum omega^{tn}| <= 2 q log p / (pi t) violated at " + std::to_string(violations) +
                         " (p, q, t) triples; max ratio " + detail::format_double(worst_ratio, 17));
  }
  return r;
}

inline Report run_wieferich(const RunConfig& c) {
  const auto hits = wieferich_scan(c.base, c.limit, c.threads);
  Report r;
  r.add("base", c.base);
  r.add("limit", c.limit);
  r.add("count", static_cast<u64>(hits.size()));
  r.columns = {"p", "revalidated"};
  for (const auto& h : hits) r.rows.push_back({h.p, h.revalidated});
  return r;
}

}  // namespace detail

inline Report build_report(const RunConfig& c) {
  Report r;
  switch (c.command) {
    case Command::period:
      r = detail::run_period(c);
      break;
    case Command::reptend:
      r = detail::run_reptend(c);
      break;
    case Command::census:
      r = detail::run_census(c);
      break;
    case Command::density:
      r = detail::run_density(c);
      break;
    case Command::totient_sums:
      r = detail::run_totient(c);
      break;
    case Command::expsum:
      r = c.p != 0 ? detail::run_expsum_single(c) : detail::run_expsum_sweep(c);
      break;
    case Command::verify_lemma1:
      r = detail::run_verify_lemma1(c);
      break;
    case Command::verify_lemma33:
      r = detail::run_verify_lemma33(c);
      break;
    case Command::wieferich:
      r = detail::run_wieferich(c);
      break;
  }
  r.command = command_name(c.command);
  r.config = detail::config_fields(c);
  return r;
}

/// Validates, dispatches and writes the report. Returns the process exit
/// status: 0 ok, 1 domain error, 2 verification failure, 3 finding, 64 usage.
inline int run(const RunConfig& raw, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = validated(raw);
    const Report r = build_report(c);
    write_report(out, r, c.format);
    return r.findings.empty() ? kExitOk : kExitFinding;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace artin

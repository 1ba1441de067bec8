#pragma once

// Exponential sums over exponents coprime to p - 1:
//
//   V_p(s) = sum_{1 <= n <= p-1, gcd(n, p-1) = 1} e^{2 pi i s tau^n / p}
//
// together with the Moebius expansion of sum omega^{tn} (omega a q-th root
// of unity), Lagrange resolvents mixing p-th and q-th roots of unity, and
// empirical bound ratios. Bounds stated only up to an implied constant are
// evaluated with constant 1 and reported, never asserted.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/indicator.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"
#include "artin/summation.hpp"

namespace artin {

using cplx = std::complex<double>;

/// e^{2 pi i k / n} for k in [0, n), indexed by exact integer residue.
class UnitRoots {
 public:
  explicit UnitRoots(u64 n) : n_(n), roots_(n) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (u64 k = 0; k < n; ++k) roots_[k] = std::polar(1.0, step * static_cast<double>(k));
  }

  [[nodiscard]] cplx operator[](u64 k) const { return roots_[k % n_]; }
  [[nodiscard]] u64 order() const { return n_; }

 private:
  u64 n_;
  std::vector<cplx> roots_;
};

// ---------------------------------------------------------------------------
// V_p(s)

inline constexpr u64 kExpSumMaxPrime = 1'000'000;
inline constexpr u64 kScanMaxPrime = 10'000;

struct ExpSumSample {
  u64 p = 0;
  u64 tau = 0;
  u64 s = 0;
  cplx value;
  double modulus = 0.0;
  double ratio_78 = 0.0;    // |V| / p^{15/16}
  double ratio_sqrt = 0.0;  // |V| / (p^{1/2} log p)
  u64 term_count = 0;       // phi(p - 1)
};

inline double bound_78(u64 p) { return std::pow(static_cast<double>(p), 15.0 / 16.0); }

inline double bound_sqrt_log(u64 p) {
  const auto x = static_cast<double>(p);
  return std::sqrt(x) * std::log(x);
}

namespace detail {

inline void fill_ratios(ExpSumSample& e) {
  e.modulus = std::abs(e.value);
  e.ratio_78 = e.modulus / bound_78(e.p);
  e.ratio_sqrt = e.modulus / bound_sqrt_log(e.p);
}

}  // namespace detail

/// Direct O(p) evaluation of V_p(s). The sum is taken twice, forward and in
/// reverse, and the two must agree to 1e-8 relative.
inline ExpSumSample exp_sum_coprime(u64 p, u64 tau, u64 s) {
  if (p > kExpSumMaxPrime) throw RefusalError("exp_sum_coprime: p exceeds cap " + std::to_string(kExpSumMaxPrime));
  detail::require_generator(p, tau, "exp_sum_coprime");
  if (s < 1 || s > p - 1) throw DomainError("exp_sum_coprime: s must lie in [1, p-1]");

  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  std::vector<cplx> terms;
  u64 power = 1;
  for (u64 n = 1; n <= p - 1; ++n) {
    power = mul_mod(power, tau % p, p);
    if (std::gcd(n, p - 1) != 1) continue;
    terms.push_back(std::polar(1.0, step * static_cast<double>(mul_mod(s, power, p))));
  }
  ComplexCompensatedSum fwd;
  ComplexCompensatedSum rev;
  for (const auto& z : terms) fwd += z;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) rev += *it;

  ExpSumSample e{p, tau, s, fwd.value()};
  e.term_count = terms.size();
  detail::fill_ratios(e);
  if (std::abs(fwd.value() - rev.value()) > 1e-8 * std::max(1.0, e.modulus)) {
    throw VerificationError("exp_sum_coprime: forward and reversed sums disagree at p=" + std::to_string(p));
  }
  return e;
}

/// Discrete-log layout of V_p for one (p, tau): V_p(tau^j) = sum over
/// coprime n of w[n + j], w[m] = e^{2 pi i tau^m / p}. Evaluating any s is
/// then a gather without modular reductions.
class CoprimeExpSum {
 public:
  CoprimeExpSum(u64 p, u64 tau) : p_(p), tau_(tau), dlog_(p, 0) {
    detail::require_generator(p, tau, "CoprimeExpSum");
    const UnitRoots zeta(p);
    const u64 m = p - 1;
    w_.resize(2 * m);
    u64 power = 1;
    for (u64 j = 0; j < 2 * m; ++j) {
      if (j < m) dlog_[power] = j;
      w_[j] = zeta[power];
      power = mul_mod(power, tau % p, p);
    }
    for (u64 n = 1; n <= m; ++n) {
      // Exponent n and n - (p-1) index the same power; keep n mod (p-1).
      if (std::gcd(n, m) == 1) coprime_.push_back(n % m);
    }
  }

  [[nodiscard]] cplx operator()(u64 s) const {
    const u64 j = dlog_[s % p_];
    ComplexCompensatedSum acc;
    for (u64 n : coprime_) acc += w_[n + j];
    return acc.value();
  }

  [[nodiscard]] u64 p() const { return p_; }
  [[nodiscard]] u64 tau() const { return tau_; }
  [[nodiscard]] const std::vector<u64>& coprime_exponents() const { return coprime_; }
  [[nodiscard]] u64 dlog(u64 v) const { return dlog_[v % p_]; }

 private:
  u64 p_;
  u64 tau_;
  std::vector<u64> dlog_;
  std::vector<cplx> w_;
  std::vector<u64> coprime_;
};

struct MaxOverS {
  u64 p = 0;
  u64 tau = 0;
  u64 s_star = 0;
  double max_modulus = 0.0;
  u64 candidates = 0;  // number of s scanned
  double ratio_78 = 0.0;
  double ratio_sqrt = 0.0;
  [[nodiscard]] bool violates_78() const { return ratio_78 > 1.0; }
};

/// max |V_p(s)| over s in [1, p-1] with gcd(s, p-1) = 1. Ties go to the
/// smallest s.
inline MaxOverS max_over_s(u64 p, u64 tau) {
  if (p > kScanMaxPrime) throw RefusalError("max_over_s: p exceeds scan cap " + std::to_string(kScanMaxPrime));
  const CoprimeExpSum v(p, tau);
  MaxOverS out{p, tau};
  for (u64 s = 1; s <= p - 1; ++s) {
    if (std::gcd(s, p - 1) != 1) continue;
    ++out.candidates;
    const double mod = std::abs(v(s));
    if (mod > out.max_modulus || out.s_star == 0) {
      out.max_modulus = mod;
      out.s_star = s;
    }
  }
  out.ratio_78 = out.max_modulus / bound_78(p);
  out.ratio_sqrt = out.max_modulus / bound_sqrt_log(p);
  return out;
}

/// max_over_s for every prime in [pmin, pmax], each with its least
/// primitive root, ascending in p.
inline std::vector<MaxOverS> max_over_s_sweep(u64 pmin, u64 pmax, unsigned threads = 1) {
  if (pmax > kScanMaxPrime) throw RefusalError("max_over_s_sweep: pmax exceeds scan cap");
  std::vector<u64> primes;
  for_each_prime(std::max<u64>(pmin, 3), pmax, [&](u64 p) { primes.push_back(p); });
  // Largest primes first would balance better, but chunk order fixes output order
  // either way.
  return parallel_chunks(primes.size(), threads,
                         [&](std::size_t i) { return max_over_s(primes[i], find_primitive_root(primes[i])); });
}

// ---------------------------------------------------------------------------
// Moebius expansion of sum_{gcd(n, p-1) = 1} omega^{tn}

struct DivisorTerm {
  u64 d = 0;
  int mu = 0;
  cplx geometric;     // sum_{m=1}^{(p-1)/d} z^m summed term by term, z = omega^{dt}
  cplx closed;        // (z - z^{M+1}) / (1 - z), M = (p-1)/d
  cplx printed;       // (z - omega^{dtp}) / (1 - z)
};

struct MobiusCharacterSum {
  u64 q = 0;
  u64 p = 0;
  u64 t = 0;
  cplx direct;        // brute force over n
  cplx closed_form;   // sum_{d | p-1} mu(d) * closed
  cplx printed_form;  // sum_{d | p-1} mu(d) * printed
  std::vector<DivisorTerm> terms;

  [[nodiscard]] double closed_error() const { return std::abs(direct - closed_form); }
  [[nodiscard]] double printed_error() const { return std::abs(direct - printed_form); }
};

namespace detail {

inline void require_aux_prime(u64 q, u64 p, const char* who) {
  if (!is_prime(p)) throw DomainError(std::string(who) + ": p must be prime");
  if (!is_prime(q) || q <= p) throw DomainError(std::string(who) + ": q must be a prime greater than p");
}

}  // namespace detail

/// Evaluates sum_{n <= p-1, gcd(n, p-1) = 1} omega^{tn}, omega = e^{2 pi i/q},
/// directly and through inclusion-exclusion over squarefree d | p - 1 with
/// each inner geometric series in closed form. The numerator
/// omega^{dt} - omega^{dtp} of the other closed form is kept for comparison;
/// it equals the geometric series only when d = 1.
inline MobiusCharacterSum mobius_character_sum(u64 q, u64 p, u64 t) {
  detail::require_aux_prime(q, p, "mobius_character_sum");
  if (t < 1 || t > q - 1) throw DomainError("mobius_character_sum: t must lie in [1, q-1]");
  const UnitRoots omega(q);
  auto w = [&](u64 e) { return omega[mul_mod(e % q, t, q)]; };  // omega^{t e}

  MobiusCharacterSum out;
  out.q = q;
  out.p = p;
  out.t = t;
  ComplexCompensatedSum direct;
  for (u64 n = 1; n <= p - 1; ++n) {
    if (std::gcd(n, p - 1) == 1) direct += w(n);
  }
  out.direct = direct.value();

  ComplexCompensatedSum closed;
  ComplexCompensatedSum printed;
  for (auto [d, mu] : squarefree_divisors(factorize(p - 1))) {
    const u64 m_count = (p - 1) / d;
    const cplx z = w(d);
    DivisorTerm term;
    term.d = d;
    term.mu = mu;
    ComplexCompensatedSum geo;
    for (u64 m = 1; m <= m_count; ++m) geo += w(mul_mod(d, m, q));
    term.geometric = geo.value();
    if (mul_mod(d % q, t, q) == 0) {
      // z == 1 cannot happen for prime q > p, kept for completeness.
      term.closed = term.printed = cplx(static_cast<double>(m_count), 0.0);
    } else {
      const cplx z_tail = w(mul_mod(d, m_count + 1, q));  // z^{M+1} = omega^{t(p-1) + dt}
      const cplx z_printed = w(mul_mod(d, p, q));         // omega^{dtp}
      term.closed = (z - z_tail) / (1.0 - z);
      term.printed = (z - z_printed) / (1.0 - z);
    }
    closed += static_cast<double>(mu) * term.closed;
    printed += static_cast<double>(mu) * term.printed;
    out.terms.push_back(term);
  }
  out.closed_form = closed.value();
  out.printed_form = printed.value();
  return out;
}

struct BoundViolation {
  u64 t = 0;
  double modulus = 0.0;
  double bound = 0.0;
};

struct MobiusBoundReport {
  u64 q = 0;
  u64 p = 0;
  u64 checked = 0;
  double max_ratio = 0.0;  // max over t of |sum| / (2 q log p / (pi t))
  u64 t_at_max = 0;
  double max_identity_error = 0.0;  // max |direct - closed_form|
  double max_printed_error = 0.0;   // max |direct - printed_form|
  u64 printed_witness_t = 0;        // some t where a d > 1 printed term misses, 0 if none
  u64 printed_witness_d = 0;
  std::vector<BoundViolation> violations;
};

/// Checks |sum_{gcd(n,p-1)=1} omega^{tn}| <= 2 q log p / (pi t) for every
/// t in [1, q-1]. Violations are collected, not thrown.
inline MobiusBoundReport mobius_sum_bound_check(u64 q, u64 p) {
  detail::require_aux_prime(q, p, "mobius_sum_bound_check");
  MobiusBoundReport r;
  r.q = q;
  r.p = p;
  const double log_p = std::log(static_cast<double>(p));
  for (u64 t = 1; t <= q - 1; ++t) {
    const auto m = mobius_character_sum(q, p, t);
    const double modulus = std::abs(m.direct);
    const double bound = 2.0 * static_cast<double>(q) * log_p / (std::numbers::pi * static_cast<double>(t));
    const double ratio = modulus / bound;
    ++r.checked;
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.t_at_max = t;
    }
    if (modulus > bound) r.violations.push_back({t, modulus, bound});
    r.max_identity_error = std::max(r.max_identity_error, m.closed_error());
    r.max_printed_error = std::max(r.max_printed_error, m.printed_error());
    if (r.printed_witness_t == 0) {
      for (const auto& term : m.terms) {
        if (term.d > 1 && std::abs(term.printed - term.geometric) > 1e-8) {
          r.printed_witness_t = t;
          r.printed_witness_d = term.d;
          break;
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lagrange resolvents

struct ResolventSample {
  u64 q = 0;
  u64 p = 0;
  u64 tau = 0;
  u64 t = 0;
  u64 s = 0;
  cplx value;
};

/// (omega^t, zeta^s) = sum_{j=0}^{q-2} omega^{-jt} zeta^{s tau^j}, with
/// omega = e^{2 pi i/q} and zeta = e^{2 pi i/p}.
inline ResolventSample resolvent(u64 q, u64 p, u64 tau, u64 s, u64 t) {
  detail::require_aux_prime(q, p, "resolvent");
  if (s % p == 0) throw DomainError("resolvent: s must be nonzero mod p");
  if (t > q - 1) throw DomainError("resolvent: t must lie in [0, q-1]");
  const UnitRoots omega(q);
  const UnitRoots zeta(p);
  ComplexCompensatedSum acc;
  u64 power = 1;  // tau^j mod p
  for (u64 j = 0; j <= q - 2; ++j) {
    const u64 neg = (q - mul_mod(j, t, q)) % q;  // -jt mod q
    acc += omega[neg] * zeta[mul_mod(s % p, power, p)];
    power = mul_mod(power, tau % p, p);
  }
  return {q, p, tau, t, s, acc.value()};
}

// ---------------------------------------------------------------------------
// Shift differences V_p(s) - V_p(1)

struct ShiftDifferenceReport {
  u64 p = 0;
  u64 tau = 0;
  u64 phi_pm1 = 0;
  double max_difference = 0.0;  // D(p) = max_s |V_p(s) - V_p(1)|
  u64 s_at_max = 0;
  double ratio = 0.0;           // D(p) / (p^{1/2} log^3 p)
  u64 multipliers = 0;          // p - 1
  u64 set_equal_count = 0;      // s with s * G == G, G = {tau^n : gcd(n, p-1) = 1}
  std::vector<u64> set_equal_multipliers;
  [[nodiscard]] double set_equality_rate() const {
    return multipliers == 0 ? 0.0 : static_cast<double>(set_equal_count) / static_cast<double>(multipliers);
  }
};

/// Scans all s in [1, p-1]: records D(p) and whether multiplication by s
/// maps the set of generators G onto itself. Both G and s * G must have
/// exactly phi(p-1) elements; a different count is a VerificationError.
inline ShiftDifferenceReport shift_difference_scan(u64 p, u64 tau) {
  if (p > kScanMaxPrime) throw RefusalError("shift_difference_scan: p exceeds scan cap");
  const CoprimeExpSum v(p, tau);
  ShiftDifferenceReport r;
  r.p = p;
  r.tau = tau;
  r.phi_pm1 = euler_phi(p - 1);
  r.multipliers = p - 1;

  std::vector<std::uint8_t> in_g(p, 0);
  u64 g_size = 0;
  for (u64 n : v.coprime_exponents()) {
    const u64 g = mod_pow(tau, n, p);
    if (in_g[g] == 0) ++g_size;
    in_g[g] = 1;
  }
  if (g_size != r.phi_pm1) throw VerificationError("shift_difference_scan: |G| != phi(p-1)");

  const cplx base = v(1);
  std::vector<std::uint32_t> seen(p, 0);
  for (u64 s = 1; s <= p - 1; ++s) {
    const double diff = std::abs(v(s) - base);
    if (diff > r.max_difference) {
      r.max_difference = diff;
      r.s_at_max = s;
    }
    u64 image_size = 0;
    bool equal = true;
    for (u64 g = 1; g < p; ++g) {
      if (in_g[g] == 0) continue;
      const u64 img = mul_mod(s, g, p);
      if (seen[img] != s) {
        seen[img] = static_cast<std::uint32_t>(s);
        ++image_size;
      }
      if (in_g[img] == 0) equal = false;
    }
    if (image_size != r.phi_pm1) throw VerificationError("shift_difference_scan: |s*G| != phi(p-1)");
    if (equal) {
      ++r.set_equal_count;
      r.set_equal_multipliers.push_back(s);
    }
  }
  const double lp = std::log(static_cast<double>(p));
  r.ratio = r.max_difference / (std::sqrt(static_cast<double>(p)) * lp * lp * lp);
  return r;
}

/// (1/p) sum_{0<k<p} e^{-2 pi i u k / p}; its modulus is exactly 1/p for u != 0 mod p.
inline cplx normalized_character_sum(u64 p, u64 u) {
  if (!is_prime(p)) throw DomainError("normalized_character_sum: p must be prime");
  const UnitRoots zeta(p);
  ComplexCompensatedSum acc;
  for (u64 k = 1; k < p; ++k) acc += std::conj(zeta[mul_mod(u % p, k, p)]);
  return acc.value() / static_cast<double>(p);
}

}  // namespace artin

#pragma once

// Characteristic function of primitive roots mod p, written as a double sum
// of additive characters over exponents coprime to p - 1:
//
//   Psi(u) = sum_{gcd(n, p-1) = 1} (1/p) sum_{0 <= k < p} e^{2 pi i (tau^n - u) k / p}
//
// The inner sum is p when tau^n == u (mod p) and 0 otherwise.

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"
#include "artin/summation.hpp"

namespace artin {

namespace detail {

inline void require_generator(u64 p, u64 tau, const char* who) {
  if (!is_prime(p)) throw DomainError(std::string(who) + ": modulus must be prime");
  if (!is_primitive_root(tau, p, factorize(p - 1))) {
    throw DomainError(std::string(who) + ": tau is not a primitive root mod " + std::to_string(p));
  }
}

}  // namespace detail

/// Exact evaluator. Precomputes the set {tau^n : gcd(n, p-1) = 1} once so
/// repeated queries for the same (p, tau) are O(1).
class PsiEvaluator {
 public:
  PsiEvaluator(u64 p, u64 tau) : p_(p), tau_(tau), hits_(p, 0) {
    detail::require_generator(p, tau, "psi_exact");
    u64 power = 1;
    for (u64 n = 1; n <= p - 1; ++n) {
      power = mul_mod(power, tau % p, p);
      // Inner character sum collapses to p on a match and 0 otherwise;
      // store the count of matches directly.
      if (std::gcd(n, p - 1) == 1) ++hits_[power];
    }
  }

  [[nodiscard]] int operator()(u64 u) const {
    if (u < 1 || u > p_ - 1) throw DomainError("psi_exact: u must lie in [1, p-1]");
    const unsigned matches = hits_[u];
    if (matches > 1) throw VerificationError("psi_exact: discrete logarithm is not unique");
    return static_cast<int>(matches);
  }

  [[nodiscard]] u64 p() const { return p_; }
  [[nodiscard]] u64 tau() const { return tau_; }

 private:
  u64 p_;
  u64 tau_;
  std::vector<unsigned> hits_;
};

inline int psi_exact(u64 p, u64 tau, u64 u) { return PsiEvaluator(p, tau)(u); }

struct PsiNumeric {
  double real = 0.0;
  double imag = 0.0;
};

// Cost of the literal evaluation grows like p * phi(p-1).
inline constexpr u64 kPsiNumericMaxPrime = 10'000;

/// Literal floating-point evaluation of the double sum.
inline PsiNumeric psi_numeric(u64 p, u64 tau, u64 u) {
  if (p > kPsiNumericMaxPrime) {
    throw RefusalError("psi_numeric: p=" + std::to_string(p) + " exceeds cost cap " +
                       std::to_string(kPsiNumericMaxPrime));
  }
  detail::require_generator(p, tau, "psi_numeric");
  if (u < 1 || u > p - 1) throw DomainError("psi_numeric: u must lie in [1, p-1]");

  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  ComplexCompensatedSum total;
  u64 power = 1;
  for (u64 n = 1; n <= p - 1; ++n) {
    power = mul_mod(power, tau % p, p);
    if (std::gcd(n, p - 1) != 1) continue;
    const u64 z = (power + p - u % p) % p;  // tau^n - u mod p
    for (u64 k = 0; k < p; ++k) {
      const double angle = step * static_cast<double>(mul_mod(z, k, p));
      total.add(std::cos(angle), std::sin(angle));
    }
  }
  const auto v = total.value() / static_cast<double>(p);
  return {v.real(), v.imag()};
}

struct PsiEvaluation {
  u64 p = 0;
  u64 tau = 0;
  u64 u = 0;
  int psi_exact = 0;
  double psi_numeric = 0.0;
  double psi_numeric_imag = 0.0;
  int indicator_oracle = 0;  // [ord_p(u) == p - 1]
};

inline PsiEvaluation evaluate_psi(u64 p, u64 tau, u64 u) {
  PsiEvaluation e{p, tau, u};
  e.psi_exact = psi_exact(p, tau, u);
  const auto num = psi_numeric(p, tau, u);
  e.psi_numeric = num.real;
  e.psi_numeric_imag = num.imag;
  e.indicator_oracle = multiplicative_order(u, p).is_primitive ? 1 : 0;
  return e;
}

struct PrimeRootCount {
  u64 p = 0;
  u64 tau = 0;
  u64 primitive_count = 0;  // sum over u of Psi(u)
  u64 phi_pm1 = 0;
};

struct Lemma1Report {
  u64 pmax = 0;
  u64 pairs_checked = 0;
  u64 mismatches = 0;
  u64 count_mismatches = 0;
  std::vector<PrimeRootCount> per_prime;
};

inline constexpr u64 kPsiCensusMaxPrime = 2000;

/// For every prime p <= pmax and every u in [1, p-1], compares Psi(u) with
/// the direct order test, and the number of u with Psi(u) = 1 with
/// phi(p - 1). Throws VerificationError with the first counterexample.
inline Lemma1Report psi_census_check(u64 pmax, unsigned threads = 1) {
  if (pmax < 2) throw DomainError("psi_census_check: pmax must be >= 2");
  if (pmax > kPsiCensusMaxPrime) {
    throw RefusalError("psi_census_check: pmax exceeds cap " + std::to_string(kPsiCensusMaxPrime));
  }
  const PrimeTable table(pmax);
  const auto& primes = table.primes();

  struct PerPrime {
    PrimeRootCount count;
    u64 pairs = 0;
    std::string first_mismatch;
  };
  auto results = parallel_chunks(primes.size(), threads, [&](std::size_t i) {
    const u64 p = primes[i];
    const auto pm1 = factorize(p - 1, table);
    PerPrime out;
    out.count = {p, find_primitive_root(p), 0, euler_phi(pm1)};
    const PsiEvaluator psi(p, out.count.tau);
    for (u64 u = 1; u <= p - 1; ++u) {
      const int exact = psi(u);
      const int oracle = multiplicative_order(u, p, pm1).is_primitive ? 1 : 0;
      ++out.pairs;
      out.count.primitive_count += static_cast<u64>(exact);
      if (exact != oracle && out.first_mismatch.empty()) {
        out.first_mismatch = "p=" + std::to_string(p) + " u=" + std::to_string(u) +
                             " psi=" + std::to_string(exact) + " order_test=" + std::to_string(oracle);
      }
    }
    return out;
  });

  Lemma1Report report;
  report.pmax = pmax;
  for (auto& r : results) {
    report.pairs_checked += r.pairs;
    if (!r.first_mismatch.empty()) {
      throw VerificationError("psi_census_check: mismatch at " + r.first_mismatch);
    }
    if (r.count.primitive_count != r.count.phi_pm1) {
      throw VerificationError("psi_census_check: primitive-root count " + std::to_string(r.count.primitive_count) +
                              " != phi(p-1) = " + std::to_string(r.count.phi_pm1) + " at p=" +
                              std::to_string(r.count.p));
    }
    report.per_prime.push_back(r.count);
  }
  return report;
}

}  // namespace artin

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "artin/expsums.hpp"

using namespace artin;

namespace {

using lcplx = std::complex<long double>;

lcplx root(u64 k, u64 n) {
  const long double a = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k % n) / n;
  return {std::cos(a), std::sin(a)};
}

// Straight long-double summation of V_p(s), computing tau^n by repeated
// multiplication from scratch for every n.
lcplx reference_sum(u64 p, u64 tau, u64 s) {
  lcplx acc = 0;
  for (u64 n = 1; n <= p - 1; ++n) {
    if (std::gcd(n, p - 1) != 1) continue;
    u64 pw = 1;
    for (u64 i = 0; i < n; ++i) pw = pw * tau % p;
    acc += root(s * pw % p, p);
  }
  return acc;
}

double dist(cplx a, lcplx b) {
  return static_cast<double>(std::abs(lcplx(a.real(), a.imag()) - b));
}

}  // namespace

TEST(ExpSum, HandEvaluatedCases) {
  // n in {1, 5}: 3^1 = 3, 3^5 = 5 (mod 7).
  const auto a = exp_sum_coprime(7, 3, 1);
  EXPECT_LT(dist(a.value, root(3, 7) + root(5, 7)), 1e-12);
  EXPECT_EQ(a.term_count, 2u);

  const auto b = exp_sum_coprime(3, 2, 1);
  EXPECT_LT(dist(b.value, root(2, 3)), 1e-12);
  EXPECT_NEAR(b.modulus, 1.0, 1e-12);
}

TEST(ExpSum, MatchesReferenceSummation) {
  const auto e = exp_sum_coprime(101, 2, 1);
  EXPECT_NEAR(e.modulus, static_cast<double>(std::abs(reference_sum(101, 2, 1))), 1e-9);
  for (u64 s : {2u, 17u, 50u, 100u}) EXPECT_LT(dist(exp_sum_coprime(101, 2, s).value, reference_sum(101, 2, s)), 1e-9);
}

TEST(ExpSum, Errors) {
  EXPECT_THROW(exp_sum_coprime(7, 2, 1), DomainError);
  EXPECT_THROW(exp_sum_coprime(7, 3, 0), DomainError);
  EXPECT_THROW(exp_sum_coprime(7, 3, 7), DomainError);
  EXPECT_THROW(exp_sum_coprime(1'000'003, 2, 1), RefusalError);
}

TEST(ExpSum, BoundedByTermCountAndRatiosConsistent) {
  for (u64 p : {11u, 101u, 997u, 7919u}) {
    const u64 tau = find_primitive_root(p);
    for (u64 s : std::initializer_list<u64>{1, 2, p - 1}) {
      const auto e = exp_sum_coprime(p, tau, s);
      EXPECT_LE(e.modulus, static_cast<double>(euler_phi(p - 1)) + 1e-9);
      EXPECT_NEAR(e.ratio_78, e.modulus / std::pow(double(p), 15.0 / 16.0), 1e-12);
      EXPECT_NEAR(e.ratio_sqrt, e.modulus / (std::sqrt(double(p)) * std::log(double(p))), 1e-12);
    }
  }
}

TEST(ExpSum, DependsOnlyOnValueMultiset) {
  for (u64 p : sieve_primes(500).primes()) {
    if (p < 3) continue;
    const u64 tau = find_primitive_root(p);
    std::vector<u64> base;
    u64 pw = 1;
    for (u64 n = 1; n <= p - 1; ++n) {
      pw = pw * tau % p;
      if (std::gcd(n, p - 1) == 1) base.push_back(pw);
    }
    for (u64 s = 1; s < p; s += 1 + p / 40) {
      std::vector<u64> vals;
      for (u64 g : base) vals.push_back(s * g % p);
      std::sort(vals.rbegin(), vals.rend());
      lcplx acc = 0;
      for (u64 v : vals) acc += root(v, p);
      ASSERT_LT(dist(exp_sum_coprime(p, tau, s).value, acc), 1e-9) << p << ' ' << s;
    }
  }
}

TEST(ExpSum, ConjugateSymmetry) {
  for (u64 p : sieve_primes(500).primes()) {
    if (p < 3) continue;
    const CoprimeExpSum v(p, find_primitive_root(p));
    for (u64 s = 1; s < p; ++s) ASSERT_LT(std::abs(v(p - s) - std::conj(v(s))), 1e-9) << p << ' ' << s;
  }
}

TEST(ExpSum, DiscreteLogLayoutMatchesDirect) {
  for (u64 p : {3u, 13u, 257u, 1009u}) {
    const u64 tau = find_primitive_root(p);
    const CoprimeExpSum v(p, tau);
    for (u64 s = 1; s < p; s += 3) ASSERT_LT(std::abs(v(s) - exp_sum_coprime(p, tau, s).value), 1e-10) << p << ' ' << s;
  }
}

TEST(MaxOverS, SmallCasesMatchEnumeration) {
  const auto m = max_over_s(7, 3);
  // Admissible s: gcd(s, 6) = 1, i.e. {1, 5}.
  EXPECT_EQ(m.candidates, 2u);
  const double m1 = std::abs(exp_sum_coprime(7, 3, 1).value);
  const double m5 = std::abs(exp_sum_coprime(7, 3, 5).value);
  EXPECT_NEAR(m.max_modulus, std::max(m1, m5), 1e-12);
  EXPECT_EQ(m.s_star, m5 > m1 + 1e-12 ? 5u : 1u);

  const auto three = max_over_s(3, 2);
  EXPECT_EQ(three.s_star, 1u);
  EXPECT_NEAR(three.max_modulus, 1.0, 1e-12);
}

TEST(MaxOverS, P499UnderFifteenSixteenths) {
  const u64 tau = find_primitive_root(499);
  const auto m = max_over_s(499, tau);
  EXPECT_LE(m.max_modulus, std::pow(499.0, 15.0 / 16.0));
  EXPECT_FALSE(m.violates_78());
  double oracle = 0;
  for (u64 s = 1; s < 499; ++s) {
    if (std::gcd(s, u64{498}) == 1) oracle = std::max(oracle, static_cast<double>(std::abs(reference_sum(499, tau, s))));
  }
  EXPECT_NEAR(m.max_modulus, oracle, 1e-9);
  EXPECT_THROW(max_over_s(10'007, 5), RefusalError);
}

TEST(MaxOverS, SweepIsThreadCountIndependent) {
  const auto one = max_over_s_sweep(10, 400, 1);
  const auto four = max_over_s_sweep(10, 400, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].p, four[i].p);
    EXPECT_EQ(one[i].s_star, four[i].s_star);
    EXPECT_EQ(one[i].max_modulus, four[i].max_modulus);
  }
  EXPECT_EQ(one.front().p, 11u);
}

TEST(MobiusCharacterSum, SmallCases) {
  const auto a = mobius_character_sum(11, 7, 1);
  // gcd(n, 6) = 1 for n in {1, 5}.
  EXPECT_LT(dist(a.direct, root(1, 11) + root(5, 11)), 1e-12);
  EXPECT_LT(a.closed_error(), 1e-12);

  const auto b = mobius_character_sum(5, 3, 1);
  EXPECT_LT(dist(b.direct, root(1, 5)), 1e-12);
  EXPECT_LT(b.closed_error(), 1e-12);
}

TEST(MobiusCharacterSum, ClosedFormAgreesForAllT) {
  double worst = 0;
  for (u64 t = 1; t <= 102; ++t) worst = std::max(worst, mobius_character_sum(103, 101, t).closed_error());
  EXPECT_LT(worst, 1e-8);
  for (u64 p : sieve_primes(120).primes()) {
    const u64 q = next_prime(p);
    for (u64 t = 1; t < q; ++t) ASSERT_LT(mobius_character_sum(q, p, t).closed_error(), 1e-8) << p << ' ' << t;
  }
}

TEST(MobiusCharacterSum, PerDivisorTermsAreGeometricSums) {
  const auto m = mobius_character_sum(11, 7, 3);
  ASSERT_EQ(m.terms.size(), 4u);  // squarefree d | 6
  bool printed_differs = false;
  for (const auto& term : m.terms) {
    EXPECT_LT(std::abs(term.closed - term.geometric), 1e-12) << term.d;
    if (term.d == 1) {
      EXPECT_LT(std::abs(term.printed - term.geometric), 1e-12);
    }
    if (term.d > 1 && std::abs(term.printed - term.geometric) > 1e-8) printed_differs = true;
  }
  EXPECT_TRUE(printed_differs);
}

TEST(MobiusCharacterSum, Errors) {
  EXPECT_THROW(mobius_character_sum(7, 7, 1), DomainError);
  EXPECT_THROW(mobius_character_sum(5, 7, 1), DomainError);
  EXPECT_THROW(mobius_character_sum(15, 7, 1), DomainError);
  EXPECT_THROW(mobius_character_sum(11, 7, 0), DomainError);
  EXPECT_THROW(mobius_character_sum(11, 7, 11), DomainError);
}

TEST(MobiusBound, P7Q11) {
  const auto r = mobius_sum_bound_check(11, 7);
  EXPECT_EQ(r.checked, 10u);
  // |omega^8 + omega^40| = 1.919 against 2*11*log(7)/(8 pi) = 1.703.
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].t, 8u);
  EXPECT_NEAR(r.violations[0].modulus, 1.918986, 1e-6);
  EXPECT_NEAR(r.violations[0].bound, 1.703357, 1e-6);
  EXPECT_NE(r.printed_witness_t, 0u);
  EXPECT_GT(r.printed_witness_d, 1u);
}

TEST(MobiusBound, TOneIsWeakerThanTrivialCap) {
  for (u64 p : {11u, 101u, 293u}) {
    const u64 q = next_prime(p);
    const double bound = 2.0 * double(q) * std::log(double(p)) / std::numbers::pi;
    EXPECT_GT(bound, double(euler_phi(p - 1)));
    EXPECT_LE(std::abs(mobius_character_sum(q, p, 1).direct), bound);
  }
}

TEST(MobiusBound, P101ReportsMaxRatio) {
  const auto r = mobius_sum_bound_check(103, 101);
  EXPECT_EQ(r.checked, 102u);
  EXPECT_GT(r.max_ratio, 0.0);
  EXPECT_GE(r.t_at_max, 1u);
  EXPECT_LT(r.max_identity_error, 1e-8);
}

TEST(Resolvent, TrivialCharacterCases) {
  const auto a = resolvent(11, 7, 3, 1, 0);
  lcplx oracle = 0;
  u64 pw = 1;
  for (int j = 0; j <= 9; ++j) {
    oracle += root(pw, 7);
    pw = pw * 3 % 7;
  }
  EXPECT_LT(dist(a.value, oracle), 1e-12);

  // 2^j mod 3 alternates 1, 2: 2(zeta + zeta^2) = -2.
  const auto b = resolvent(5, 3, 2, 1, 0);
  EXPECT_NEAR(b.value.real(), -2.0, 1e-12);
  EXPECT_NEAR(b.value.imag(), 0.0, 1e-12);
}

TEST(Resolvent, MatchesDirectDefinitionAndTriangleInequality) {
  std::mt19937_64 rng(99);
  for (u64 p : {7u, 13u, 101u}) {
    const u64 q = next_prime(p);
    const u64 tau = find_primitive_root(p);
    for (int i = 0; i < 10; ++i) {
      const u64 t = rng() % q;
      const u64 s = 1 + rng() % (p - 1);
      const auto r = resolvent(q, p, tau, s, t);
      lcplx oracle = 0;
      for (u64 j = 0; j <= q - 2; ++j) {
        u64 pw = 1;
        for (u64 k = 0; k < j; ++k) pw = pw * tau % p;
        oracle += root(q - (j * t) % q, q) * root(s * pw % p, p);
      }
      ASSERT_LT(dist(r.value, oracle), 1e-9);
      ASSERT_LE(std::abs(r.value), double(q - 1) + 1e-9);
    }
  }
  EXPECT_THROW(resolvent(11, 7, 3, 7, 0), DomainError);
  EXPECT_THROW(resolvent(11, 7, 3, 1, 11), DomainError);
}

TEST(ShiftDifference, P7) {
  const auto r = shift_difference_scan(7, 3);
  EXPECT_EQ(r.phi_pm1, 2u);
  EXPECT_EQ(r.multipliers, 6u);
  // {3, 5} maps to {6, 3} under s = 2: not equal; only s = 1 fixes the set.
  EXPECT_EQ(r.set_equal_multipliers, (std::vector<u64>{1}));
  EXPECT_NEAR(r.set_equality_rate(), 1.0 / 6.0, 1e-15);
}

TEST(ShiftDifference, SweepTo500) {
  for (u64 p : sieve_primes(500).primes()) {
    if (p < 3) continue;
    const u64 tau = find_primitive_root(p);
    const auto r = shift_difference_scan(p, tau);
    const CoprimeExpSum v(p, tau);
    double oracle = 0;
    for (u64 s = 1; s < p; ++s) oracle = std::max(oracle, std::abs(v(s) - v(1)));
    ASSERT_NEAR(r.max_difference, oracle, 1e-12) << p;
    ASSERT_GE(r.set_equal_count, 1u) << p;  // s = 1
    const double lp = std::log(double(p));
    ASSERT_NEAR(r.ratio, oracle / (std::sqrt(double(p)) * lp * lp * lp), 1e-12);
  }
}

TEST(NormalizedCharacterSum, ModulusIsOneOverP) {
  for (u64 p : {3u, 7u, 101u, 997u}) {
    for (u64 u : std::initializer_list<u64>{1, 2, p - 1}) EXPECT_NEAR(std::abs(normalized_character_sum(p, u)), 1.0 / double(p), 1e-13);
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "artin/indicator.hpp"

using namespace artin;

namespace {

bool generates(u64 g, u64 p) {
  std::set<u64> seen;
  u64 x = 1;
  for (u64 i = 0; i < p - 1; ++i) {
    x = x * g % p;
    seen.insert(x);
  }
  return seen.size() == p - 1;
}

}  // namespace

TEST(PsiExact, Examples) {
  EXPECT_EQ(psi_exact(7, 3, 3), 1);
  EXPECT_EQ(psi_exact(7, 3, 2), 0);
  for (u64 p : {3u, 7u, 13u, 101u}) EXPECT_EQ(psi_exact(p, find_primitive_root(p), 1), 0) << p;
  EXPECT_EQ(psi_exact(13, 2, 6), 1);
}

TEST(PsiExact, Errors) {
  EXPECT_THROW(psi_exact(7, 2, 3), DomainError);  // ord_7(2) = 3
  EXPECT_THROW(psi_exact(9, 2, 3), DomainError);
  EXPECT_THROW(psi_exact(7, 3, 0), DomainError);
  EXPECT_THROW(psi_exact(7, 3, 7), DomainError);
}

TEST(PsiNumeric, Examples) {
  const auto a = psi_numeric(7, 3, 3);
  EXPECT_NEAR(a.real, 1.0, 1e-9);
  EXPECT_LT(std::abs(a.imag), 1e-9);

  const auto b = psi_numeric(7, 3, 2);
  EXPECT_NEAR(b.real, 0.0, 1e-9);

  // 6 = 2^5 mod 13 and gcd(5, 12) = 1.
  EXPECT_EQ(psi_exact(13, 2, 6), 1);
  EXPECT_NEAR(psi_numeric(13, 2, 6).real, 1.0, 1e-9);
}

TEST(PsiNumeric, AgreesWithExactOnSmallFields) {
  for (u64 p : {3u, 5u, 11u, 31u, 97u, 211u}) {
    const u64 tau = find_primitive_root(p);
    for (u64 u = 1; u < p; ++u) {
      const auto e = evaluate_psi(p, tau, u);
      ASSERT_EQ(e.psi_exact, e.indicator_oracle) << p << ' ' << u;
      ASSERT_LT(std::abs(e.psi_numeric - e.psi_exact), 1e-6) << p << ' ' << u;
      ASSERT_LT(std::abs(e.psi_numeric_imag), 1e-6) << p << ' ' << u;
    }
  }
}

TEST(PsiNumeric, CostCap) {
  EXPECT_THROW(psi_numeric(10'007, 5, 2), RefusalError);
  EXPECT_NO_THROW(psi_numeric(9973, find_primitive_root(9973), 2));
}

TEST(PsiExact, IndependentOfChosenGenerator) {
  for (u64 p : sieve_primes(100).primes()) {
    if (p == 2) continue;
    std::vector<int> reference;
    for (u64 u = 1; u < p; ++u) reference.push_back(generates(u, p) ? 1 : 0);
    for (u64 tau = 1; tau < p; ++tau) {
      if (!generates(tau, p)) continue;
      const PsiEvaluator psi(p, tau);
      for (u64 u = 1; u < p; ++u) ASSERT_EQ(psi(u), reference[u - 1]) << p << ' ' << tau << ' ' << u;
    }
  }
}

TEST(PsiCensus, SmallCases) {
  const auto seven = psi_census_check(7);
  ASSERT_EQ(seven.per_prime.back().p, 7u);
  EXPECT_EQ(seven.per_prime.back().primitive_count, 2u);
  const PsiEvaluator psi7(7, 3);
  std::vector<u64> roots;
  for (u64 u = 1; u < 7; ++u) {
    if (psi7(u) == 1) roots.push_back(u);
  }
  EXPECT_EQ(roots, (std::vector<u64>{3, 5}));

  const auto three = psi_census_check(3);
  EXPECT_EQ(three.per_prime.back().primitive_count, 1u);
  EXPECT_EQ(PsiEvaluator(3, 2)(2), 1);
}

TEST(PsiCensus, ExhaustiveTo2000) {
  const auto r = psi_census_check(2000, 2);
  EXPECT_EQ(r.mismatches, 0u);
  EXPECT_EQ(r.per_prime.size(), 303u);
  for (const auto& pp : r.per_prime) EXPECT_EQ(pp.primitive_count, pp.phi_pm1) << pp.p;
  EXPECT_THROW(psi_census_check(2001), RefusalError);
  EXPECT_THROW(psi_census_check(1), DomainError);
}

#pragma once

// Density of primes with a fixed primitive root u, from the decomposition
// u = (s t^2)^k with s squarefree and k maximal, plus Artin's constant and
// the logarithmic integral used for predictions.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"
#include "artin/summation.hpp"

namespace artin {

struct KernelDecomposition {
  u64 u = 0;
  unsigned k = 1;  // largest k with u a perfect k-th power
  u64 root = 0;    // u^{1/k}
  u64 s = 1;       // squarefree part of root
  u64 t = 1;       // root = s * t^2
  int mu_s = 1;
  unsigned s_mod4 = 1;
  Factorization root_factors;
};

/// Rejects u < 2 (the excluded u = +-1 and negative bases) and, unless
/// allow_square is set, perfect squares.
inline KernelDecomposition decompose_kernel(u64 u, bool allow_square = false) {
  if (u < 2) throw DomainError("decompose_kernel: base must be >= 2 (u = +-1 and negative bases are excluded)");
  const auto f = factorize(u);
  unsigned k = 0;
  for (const auto& pp : f.factors) k = std::gcd(k, pp.exponent);
  const bool square = std::all_of(f.factors.begin(), f.factors.end(),
                                  [](const PrimePower& pp) { return pp.exponent % 2 == 0; });
  if (square && !allow_square) throw DomainError("excluded base u = v^2");

  KernelDecomposition dec;
  dec.u = u;
  dec.k = k;
  dec.root = 1;
  dec.root_factors.n = 1;
  for (const auto& pp : f.factors) {
    const unsigned e = pp.exponent / k;
    for (unsigned i = 0; i < e; ++i) dec.root *= pp.prime;
    if (e % 2 == 1) dec.s *= pp.prime;
    for (unsigned i = 0; i < e / 2; ++i) dec.t *= pp.prime;
    dec.root_factors.factors.push_back({pp.prime, e});
  }
  dec.root_factors.n = dec.root;
  dec.mu_s = mobius(factorize(dec.s));
  dec.s_mod4 = static_cast<unsigned>(dec.s % 4);
  return dec;
}

// ---------------------------------------------------------------------------
// Truncated products over primes

inline constexpr u64 kDefaultTruncation = 10'000'000;

namespace detail {

// Fixed segment width, so the reduction tree never depends on thread count.
inline constexpr u64 kProductSegment = u64{1} << 22;

/// sum_{p <= limit, p does not divide skip} log(1 - 1/(p(p-1))), summed per
/// segment and merged in segment order.
inline double log_artin_product(u64 limit, u64 skip, unsigned threads) {
  const std::size_t segments = (limit + kProductSegment - 1) / kProductSegment;
  auto parts = parallel_chunks(segments, threads, [&](std::size_t i) {
    const u64 lo = i * kProductSegment + 1;
    const u64 hi = std::min(limit, (i + 1) * kProductSegment);
    CompensatedSum acc;
    for_each_prime(lo, hi, [&](u64 p) {
      if (skip != 0 && skip % p == 0) return;
      const double x = static_cast<double>(p);
      acc.add(std::log1p(-1.0 / (x * (x - 1.0))));
    });
    return acc;
  });
  CompensatedSum total;
  for (const auto& part : parts) total += part;
  return total.value();
}

}  // namespace detail

struct ArtinConstant {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on |log| of the omitted tail, hence on the relative error
  u64 truncation = 0;
};

/// prod_{p <= P} (1 - 1/(p(p-1))). The omitted factors satisfy
/// sum_{p > P} -log(1 - 1/(p(p-1))) <= sum_{n > P} 2/(n(n-1)) = 2/P.
inline ArtinConstant artin_constant(u64 truncation, unsigned threads = 1) {
  if (truncation < 100) throw DomainError("artin_constant: truncation limit must be >= 100");
  return {std::exp(detail::log_artin_product(truncation, 0, threads)), 2.0 / static_cast<double>(truncation),
          truncation};
}

enum class CoefficientVariant {
  printed,    // prod_{p | k} 1/(p-1)
  classical,  // prod_{p | k} (1 - 1/(p-1))
};

/// a_k(u) = prod_{p | k} c_p * prod_{p <= P, p not dividing k} (1 - 1/(p(p-1)))
/// with c_p per the chosen variant.
inline double a_k_value(const KernelDecomposition& dec, u64 truncation,
                        CoefficientVariant variant = CoefficientVariant::printed, unsigned threads = 1) {
  if (dec.k == 0) throw DomainError("a_k_value: invalid decomposition");
  double head = 1.0;
  for (const auto& pp : factorize(dec.k).factors) {
    const double x = static_cast<double>(pp.prime);
    head *= variant == CoefficientVariant::printed ? 1.0 / (x - 1.0) : 1.0 - 1.0 / (x - 1.0);
  }
  return head * std::exp(detail::log_artin_product(truncation, dec.k, threads));
}

struct DensityResult {
  u64 u = 0;
  KernelDecomposition decomposition;
  double a_k = 0.0;
  double delta = 0.0;
  double correction = 0.0;  // the product multiplying mu(s) in case 2; 0 in case 1
  u64 truncation = 0;
  double tail_bound = 0.0;  // relative truncation error bound
  int case_branch = 1;
  CoefficientVariant variant = CoefficientVariant::printed;
};

struct DensityOptions {
  u64 truncation = kDefaultTruncation;
  CoefficientVariant variant = CoefficientVariant::printed;
  bool allow_square = false;
  unsigned threads = 1;
};

/// delta(u): a_k(u) when s != 1 mod 4, otherwise
/// (1 - mu(s) prod_{p|s, p|k} 1/(p-2) prod_{p|s, p not| k} 1/(p^2-p-1)) a_k(u).
inline DensityResult delta(u64 u, DensityOptions opts = {}) {
  if (opts.truncation < 100) throw DomainError("delta: truncation limit must be >= 100");
  DensityResult r;
  r.u = u;
  r.decomposition = decompose_kernel(u, opts.allow_square);
  r.truncation = opts.truncation;
  r.tail_bound = 2.0 / static_cast<double>(opts.truncation);
  r.variant = opts.variant;
  r.a_k = a_k_value(r.decomposition, opts.truncation, opts.variant, opts.threads);

  const auto& dec = r.decomposition;
  if (dec.s_mod4 != 1) {
    r.case_branch = 1;
    r.delta = r.a_k;
    return r;
  }
  r.case_branch = 2;
  double corr = 1.0;
  for (const auto& pp : factorize(dec.s).factors) {
    const double x = static_cast<double>(pp.prime);
    if (dec.k % pp.prime == 0) {
      if (pp.prime == 2) throw DomainError("delta: factor 1/(p-2) undefined for p = 2");
      corr *= 1.0 / (x - 2.0);
    } else {
      corr *= 1.0 / (x * x - x - 1.0);
    }
  }
  // s = 1 (u a perfect power of a square) has an empty product; mu(1) = 1.
  r.correction = corr;
  r.delta = (1.0 - static_cast<double>(dec.mu_s) * corr) * r.a_k;
  return r;
}

// ---------------------------------------------------------------------------
// Logarithmic integral

/// li(x) = integral_2^x dt / log t by adaptive Gauss-Kronrod after the
/// substitution t = e^v, which turns the integrand into e^v / v.
inline double log_integral(double x) {
  if (!(x >= 2.0)) throw DomainError("log_integral: x must be >= 2");
  if (x == 2.0) return 0.0;
  auto f = [](double v) { return std::exp(v) / v; };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(2.0), std::log(x), 20, 1e-14,
                                                                       &err);
}

}  // namespace artin

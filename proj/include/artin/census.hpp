#pragma once

// Counting primes with a given primitive root, totient averages over
// shifted primes, and the Wieferich congruence u^{p-1} == 1 (mod p^2).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "artin/density.hpp"
#include "artin/error.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"
#include "artin/summation.hpp"

namespace artin {

inline constexpr u64 kCensusMaxLimit = 100'000'000;
inline constexpr u64 kWieferichMaxLimit = 1'000'000'000;

enum class CensusInterval {
  up_to_x,  // 2 <= p <= x
  dyadic,   // x <= p <= 2x
};

struct CensusOptions {
  CensusInterval interval = CensusInterval::up_to_x;
  u64 truncation = kDefaultTruncation;
  CoefficientVariant variant = CoefficientVariant::printed;
  SieveOptions sieve{};
  unsigned threads = 1;
};

struct CensusReport {
  u64 u = 0;
  u64 x = 0;
  u64 lo = 2;  // counted primes lie in [lo, hi]
  u64 hi = 0;
  u64 pi_x = 0;
  u64 pi_u_x = 0;
  double li_x = 0.0;  // li(hi) - li(lo) for the dyadic interval
  double delta_u = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;  // pi_u_x / li_x
  u64 truncation = 0;
  double tail_bound = 0.0;
  std::vector<u64> skipped;  // primes in range dividing u
};

/// Counts primes p in range with ord_p(u) = p - 1 and sets the
/// delta(u) li(x) prediction alongside. Primes dividing u are skipped and
/// listed.
inline CensusReport census(u64 u, u64 x, CensusOptions opts = {}) {
  CensusReport r;
  r.u = u;
  r.x = x;
  if (x < 2) throw DomainError("census: limit must be >= 2");
  r.lo = opts.interval == CensusInterval::dyadic ? x : 2;
  r.hi = opts.interval == CensusInterval::dyadic ? 2 * x : x;
  if (r.hi > kCensusMaxLimit) throw RefusalError("census: range exceeds cap " + std::to_string(kCensusMaxLimit));

  const auto dens = delta(u, {opts.truncation, opts.variant, false, opts.threads});
  r.delta_u = dens.delta;
  r.truncation = dens.truncation;
  r.tail_bound = dens.tail_bound;

  const PrimeTable table(r.hi, opts.sieve);
  const auto& primes = table.primes();
  const auto first = std::lower_bound(primes.begin(), primes.end(), r.lo) - primes.begin();
  const auto count = static_cast<std::size_t>(primes.end() - primes.begin() - first);

  struct Partial {
    u64 pi = 0;
    u64 hits = 0;
    std::vector<u64> skipped;
  };
  constexpr std::size_t kChunk = 1 << 14;
  auto parts = parallel_chunks((count + kChunk - 1) / kChunk, opts.threads, [&](std::size_t c) {
    Partial part;
    const std::size_t begin = static_cast<std::size_t>(first) + c * kChunk;
    const std::size_t end = std::min(primes.size(), begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      ++part.pi;
      if (u % p == 0) {
        part.skipped.push_back(p);
        continue;
      }
      if (is_primitive_root(u, p, factorize(p - 1, table))) ++part.hits;
    }
    return part;
  });
  for (const auto& part : parts) {
    r.pi_x += part.pi;
    r.pi_u_x += part.hits;
    r.skipped.insert(r.skipped.end(), part.skipped.begin(), part.skipped.end());
  }

  r.li_x = log_integral(static_cast<double>(r.hi)) - log_integral(static_cast<double>(r.lo));
  r.predicted = r.delta_u * r.li_x;
  r.ratio = r.li_x > 0.0 ? static_cast<double>(r.pi_u_x) / r.li_x : 0.0;
  return r;
}

struct TotientSumReport {
  u64 x = 0;
  u64 prime_count = 0;
  double sum_ratio_pm1 = 0.0;  // sum_{p <= x} phi(p-1)/(p-1)
  double sum_ratio_p = 0.0;    // sum_{p <= x} phi(p-1)/p
  double difference = 0.0;     // sum_{p <= x} phi(p-1)/(p(p-1)), summed directly
  double artin = 0.0;
  double li_x = 0.0;
  double predicted = 0.0;  // A li(x)
  double residual_pm1 = 0.0;
  double residual_p = 0.0;
  double relative_residual_pm1 = 0.0;
  u64 truncation = 0;
  double tail_bound = 0.0;
};

inline TotientSumReport totient_sums(u64 x, u64 truncation = kDefaultTruncation, unsigned threads = 1) {
  if (x < 2) throw DomainError("totient_sums: x must be >= 2");
  if (x > kCensusMaxLimit) throw RefusalError("totient_sums: x exceeds cap " + std::to_string(kCensusMaxLimit));
  TotientSumReport r;
  r.x = x;
  const PrimeTable table(x);
  const auto& primes = table.primes();

  struct Partial {
    CompensatedSum pm1, p, diff;
  };
  constexpr std::size_t kChunk = 1 << 14;
  auto parts = parallel_chunks((primes.size() + kChunk - 1) / kChunk, threads, [&](std::size_t c) {
    Partial part;
    const std::size_t end = std::min(primes.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const u64 p = primes[i];
      const auto phi = static_cast<double>(euler_phi(factorize(p - 1, table)));
      const auto pd = static_cast<double>(p);
      part.pm1.add(phi / (pd - 1.0));
      part.p.add(phi / pd);
      part.diff.add(phi / (pd * (pd - 1.0)));
    }
    return part;
  });
  CompensatedSum pm1, pp, diff;
  for (const auto& part : parts) {
    pm1 += part.pm1;
    pp += part.p;
    diff += part.diff;
  }
  r.prime_count = primes.size();
  r.sum_ratio_pm1 = pm1.value();
  r.sum_ratio_p = pp.value();
  r.difference = diff.value();

  const auto a = artin_constant(truncation, threads);
  r.artin = a.value;
  r.truncation = a.truncation;
  r.tail_bound = a.tail_bound;
  r.li_x = log_integral(static_cast<double>(x));
  r.predicted = r.artin * r.li_x;
  r.residual_pm1 = r.sum_ratio_pm1 - r.predicted;
  r.residual_p = r.sum_ratio_p - r.predicted;
  r.relative_residual_pm1 = r.predicted > 0.0 ? std::abs(r.residual_pm1) / r.predicted : 0.0;
  return r;
}

struct WieferichHit {
  u64 u = 0;
  u64 p = 0;
  bool revalidated = false;  // confirmed with arbitrary-precision arithmetic
};

/// u^{p-1} mod p^2 with boost::multiprecision, independent of mod_pow.
inline bool wieferich_congruence_bigint(u64 u, u64 p) {
  using boost::multiprecision::cpp_int;
  const cpp_int modulus = cpp_int(p) * p;
  return boost::multiprecision::powm(cpp_int(u), cpp_int(p - 1), modulus) == 1;
}

/// Primes p <= limit, p not dividing u, with u^{p-1} == 1 (mod p^2),
/// ascending. Each hit is recomputed with arbitrary precision.
inline std::vector<WieferichHit> wieferich_scan(u64 u, u64 limit, unsigned threads = 1) {
  if (u < 2) throw DomainError("wieferich_scan: base must be >= 2");
  if (limit > kWieferichMaxLimit) {
    throw RefusalError("wieferich_scan: limit exceeds cap " + std::to_string(kWieferichMaxLimit));
  }
  std::vector<WieferichHit> hits;
  if (limit < 2) return hits;
  constexpr u64 kSpan = u64{1} << 22;
  const std::size_t chunks = (limit + kSpan - 1) / kSpan;
  auto parts = parallel_chunks(chunks, threads, [&](std::size_t c) {
    std::vector<WieferichHit> out;
    const u64 lo = c * kSpan + 1;
    const u64 hi = std::min(limit, (c + 1) * kSpan);
    for_each_prime(lo, hi, [&](u64 p) {
      if (u % p == 0) return;
      // p^2 < 2^64 for p <= 10^9.
      if (mod_pow(u, p - 1, p * p) == 1) out.push_back({u, p, false});
    });
    return out;
  });
  for (auto& part : parts) {
    for (auto& h : part) {
      h.revalidated = wieferich_congruence_bigint(h.u, h.p);
      if (!h.revalidated) {
        throw VerificationError("wieferich_scan: hit p=" + std::to_string(h.p) + " fails big-integer recheck");
      }
      hits.push_back(h);
    }
  }
  return hits;
}

}  // namespace artin

#pragma once

// Periods of 1/p in an arbitrary base, by long division.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/numtheory.hpp"
#include "artin/parallel.hpp"

namespace artin {

struct PeriodRecord {
  u64 p = 0;
  u64 base = 10;
  u64 d = 0;                          // period length, ord_p(base)
  std::vector<std::uint16_t> digits;  // most significant first; empty if not extracted
  bool maximal = false;               // d == p - 1
  bool digits_extracted = false;

  /// Digits as text, one character per digit (bases up to 36).
  [[nodiscard]] std::string digit_string() const {
    static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string s;
    s.reserve(digits.size());
    for (auto x : digits) s.push_back(x < 36 ? kAlphabet[x] : '?');
    return s;
  }
};

struct PeriodOptions {
  // Periods longer than this are measured but their digits are not stored.
  u64 max_digits = 1'000'000;
  bool force_digits = false;
};

/// Long division of 1 by p in the given base. The remainder sequence starts
/// at 1 and the period ends when it returns to 1; each step multiplies the
/// remainder by the base, which is the cyclic-shift recurrence of the digits.
inline PeriodRecord period_digits(u64 p, u64 base, PeriodOptions opts = {}) {
  if (base < 2 || base > 65535) throw DomainError("period_digits: base must be in [2, 65535]");
  if (!is_prime(p)) throw DomainError("period_digits: denominator must be prime");
  if (base % p == 0) throw DomainError("terminating expansion, no period");

  PeriodRecord rec;
  rec.p = p;
  rec.base = base;
  u64 order_hint = 0;
  bool extract = opts.force_digits || p - 1 <= opts.max_digits;
  if (!extract) {
    order_hint = multiplicative_order(base, p).order;
    extract = order_hint <= opts.max_digits;
  }
  if (!extract) {
    // Too long to store; report the period from the order alone.
    rec.d = order_hint;
  } else {
    u64 r = 1;
    do {
      const u128 scaled = static_cast<u128>(r) * base;
      rec.digits.push_back(static_cast<std::uint16_t>(scaled / p));
      r = static_cast<u64>(scaled % p);
      ++rec.d;
    } while (r != 1);
  }
  rec.digits_extracted = extract;
  rec.maximal = rec.d == p - 1;
  return rec;
}

struct ReptendScanOptions {
  unsigned spot_checks = 8;  // random entries re-verified by long division
  u64 seed = 1;
  unsigned threads = 1;
};

/// Primes p <= x, p not dividing the base, for which the base is a primitive
/// root mod p, ascending. Primitivity is decided by the order test; a seeded
/// sample of hits is re-derived by long division.
inline std::vector<u64> full_reptend_scan(u64 x, u64 base, ReptendScanOptions opts = {}) {
  if (base < 2) throw DomainError("full_reptend_scan: base must be >= 2");
  std::vector<u64> hits;
  if (x < 2) return hits;
  const PrimeTable table(x);
  const auto& primes = table.primes();

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  auto parts = parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    std::vector<u64> out;
    const std::size_t end = std::min(primes.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const u64 p = primes[i];
      if (base % p == 0) continue;
      if (is_primitive_root(base, p, factorize(p - 1, table))) out.push_back(p);
    }
    return out;
  });
  for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());

  if (!hits.empty() && opts.spot_checks > 0 && base <= 65535) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, hits.size() - 1);
    for (unsigned i = 0; i < opts.spot_checks; ++i) {
      const u64 p = hits[pick(rng)];
      if (p - 1 > PeriodOptions{}.max_digits) continue;
      if (!period_digits(p, base).maximal) {
        throw VerificationError("full_reptend_scan: long division disagrees at p=" + std::to_string(p));
      }
    }
  }
  return hits;
}

}  // namespace artin

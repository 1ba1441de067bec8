#pragma once

// Prime generation, factorization, arithmetic functions and multiplicative
// orders. Everything else in the library is built on these.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "artin/error.hpp"

namespace artin {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Modular arithmetic

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

namespace detail {

constexpr u128 kMaxWideModulus = static_cast<u128>(1) << 127;

inline u128 add_mod_wide(u128 a, u128 b, u128 m) {
  // a, b < m < 2^127, so a + b cannot wrap.
  const u128 s = a + b;
  return s >= m ? s - m : s;
}

inline u128 mul_mod_wide(u128 a, u128 b, u128 m) {
  if (m <= (static_cast<u128>(1) << 64)) return a * b % m;
  u128 acc = 0;
  while (b != 0) {
    if ((b & 1) != 0) acc = add_mod_wide(acc, a, m);
    a = add_mod_wide(a, a, m);
    b >>= 1;
  }
  return acc;
}

}  // namespace detail

/// b^e mod m for 2 <= m < 2^127. Products are formed in 128 bits when m fits
/// 64 bits and by double-and-add otherwise.
inline u128 mod_pow(u128 b, u128 e, u128 m) {
  if (m < 2) throw DomainError("mod_pow: modulus must be >= 2");
  if (m >= detail::kMaxWideModulus) throw DomainError("mod_pow: modulus must be < 2^127");
  u128 result = 1;
  b %= m;
  while (e != 0) {
    if ((e & 1) != 0) result = detail::mul_mod_wide(result, b, m);
    b = detail::mul_mod_wide(b, b, m);
    e >>= 1;
  }
  return result;
}

inline u64 mod_pow(u64 b, u64 e, u64 m) {
  if (m < 2) throw DomainError("mod_pow: modulus must be >= 2");
  u64 result = 1;
  b %= m;
  while (e != 0) {
    if ((e & 1) != 0) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Primality

/// Deterministic Miller-Rabin. The first thirteen prime witnesses are exact
/// below 3.3e24, which covers every 64-bit input.
inline bool is_prime(u64 n) {
  constexpr std::array<u64, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (u64 w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : kWitnesses) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Smallest prime strictly greater than n.
inline u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// Sieving

struct SieveOptions {
  // Largest limit for which the smallest-prime-factor table is materialized
  // (one 32-bit entry per integer). Above it only the prime list is kept.
  u64 spf_budget = u64{1} << 31;
};

namespace detail {

inline std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// Calls fn(p) for every prime lo <= p <= hi in ascending order, sieving in
/// fixed-size segments so memory stays bounded for any range.
template <class Fn>
void for_each_prime(u64 lo, u64 hi, Fn&& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<u64>(lo, 2);
  const auto base = detail::simple_sieve(detail::isqrt(hi));
  constexpr u64 kSegment = u64{1} << 18;
  std::vector<std::uint8_t> mark(kSegment);
  for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
    const u64 len = seg_hi - seg_lo + 1;
    std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(len), std::uint8_t{1});
    for (u64 p : base) {
      if (p * p > seg_hi) break;
      u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (u64 j = start; j <= seg_hi; j += p) mark[j - seg_lo] = 0;
    }
    for (u64 i = 0; i < len; ++i) {
      if (mark[i] != 0) fn(seg_lo + i);
    }
    if (seg_hi == hi) break;
  }
}

/// Primes up to a limit, with an optional smallest-prime-factor table.
class PrimeTable {
 public:
  PrimeTable() = default;

  explicit PrimeTable(u64 limit, SieveOptions opts = {}) : limit_(limit) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    if (limit <= opts.spf_budget && limit < (u64{1} << 32)) {
      linear_sieve();
    } else {
      for_each_prime(2, limit, [this](u64 p) { primes_.push_back(p); });
    }
  }

  [[nodiscard]] u64 limit() const { return limit_; }
  [[nodiscard]] const std::vector<u64>& primes() const& { return primes_; }
  [[nodiscard]] std::vector<u64> primes() && { return std::move(primes_); }
  [[nodiscard]] bool has_spf() const { return !spf_.empty(); }

  /// Least prime factor of 2 <= n <= limit. Requires has_spf().
  [[nodiscard]] u64 smallest_factor(u64 n) const { return spf_[n]; }

  [[nodiscard]] bool contains_prime(u64 n) const {
    if (n < 2 || n > limit_) return false;
    if (has_spf()) return spf_[n] == n;
    return std::binary_search(primes_.begin(), primes_.end(), n);
  }

 private:
  void linear_sieve() {
    spf_.assign(limit_ + 1, 0);
    for (u64 i = 2; i <= limit_; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(i);
      }
      const u64 si = spf_[i];
      for (u64 p : primes_) {
        if (p > si || p * i > limit_) break;
        spf_[p * i] = static_cast<std::uint32_t>(p);
      }
    }
  }

  u64 limit_ = 0;
  std::vector<u64> primes_;
  std::vector<std::uint32_t> spf_;
};

inline PrimeTable sieve_primes(u64 limit, SieveOptions opts = {}) { return PrimeTable(limit, opts); }

// ---------------------------------------------------------------------------
// Factorization

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  /// Product of prime^exponent, computed in 128 bits.
  [[nodiscard]] u128 recompose() const {
    u128 v = 1;
    for (const auto& f : factors) {
      for (unsigned i = 0; i < f.exponent; ++i) v *= f.prime;
    }
    return v;
  }

  [[nodiscard]] bool divisible_by(u64 prime) const {
    return std::any_of(factors.begin(), factors.end(), [prime](const PrimePower& f) { return f.prime == prime; });
  }
};

namespace detail {

constexpr u64 kRhoSeed = 0x5eed'a271'0000'0001ULL;

inline u64 pollard_brent(u64 n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<u64> dist(1, n - 1);
  for (;;) {
    u64 y = dist(rng);
    const u64 c = dist(rng);
    constexpr u64 kBatch = 128;
    u64 g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    auto f = [&](u64 v) {
      const u64 sq = mul_mod(v, v, n);
      return sq >= n - c ? sq - (n - c) : sq + c;
    };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        const u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_large(u64 n, std::mt19937_64& rng, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n, rng);
  split_large(d, rng, out);
  split_large(n / d, rng, out);
}

inline Factorization group(u64 n, std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f{n, {}};
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p) {
      ++f.factors.back().exponent;
    } else {
      f.factors.push_back({p, 1});
    }
  }
  return f;
}

}  // namespace detail

/// Complete factorization of n >= 1: trial division by small primes, then
/// Pollard-Brent rho seeded with `seed` for the remaining cofactor.
inline Factorization factorize(u64 n, u64 seed = detail::kRhoSeed) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  std::vector<u64> primes;
  u64 m = n;
  for (u64 p : {2u, 3u, 5u}) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  // 6k +- 1 wheel up to a small bound.
  for (u64 p = 7, step = 4; p <= 1000 && p * p <= m; p += step, step = 6 - step) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) {
    std::mt19937_64 rng(seed);
    detail::split_large(m, rng, primes);
  }
  return detail::group(n, std::move(primes));
}

/// Factorization via the smallest-prime-factor table when n is covered by
/// it, otherwise the table-free path.
inline Factorization factorize(u64 n, const PrimeTable& table) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  if (!table.has_spf() || n > table.limit()) return factorize(n);
  Factorization f{n, {}};
  while (n > 1) {
    const u64 p = table.smallest_factor(n);
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Arithmetic functions

inline int mobius(const Factorization& f) {
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline int mobius(u64 n) { return mobius(factorize(n)); }

inline u64 euler_phi(const Factorization& f) {
  u64 phi = f.n;
  for (const auto& pp : f.factors) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

/// All positive divisors, ascending.
inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> ds{1};
  for (const auto& pp : f.factors) {
    const std::size_t base = ds.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Divisors d of n with mu(d) != 0, paired with mu(d). Ascending in d.
inline std::vector<std::pair<u64, int>> squarefree_divisors(const Factorization& f) {
  std::vector<std::pair<u64, int>> ds{{1, 1}};
  for (const auto& pp : f.factors) {
    const std::size_t base = ds.size();
    for (std::size_t i = 0; i < base; ++i) ds.push_back({ds[i].first * pp.prime, -ds[i].second});
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// ---------------------------------------------------------------------------
// Multiplicative order and primitive roots

struct OrderRecord {
  u64 p = 0;
  u64 u = 0;
  u64 order = 0;
  bool is_primitive = false;
};

/// ord_p(u) given the factorization of p - 1. Starts from p - 1 and strips
/// each prime q | p - 1 while u^(order/q) is still 1.
inline OrderRecord multiplicative_order(u64 u, u64 p, const Factorization& pm1) {
  if (p < 2) throw DomainError("multiplicative_order: modulus must be prime");
  if (u % p == 0) throw DomainError("base divisible by modulus");
  u64 order = p - 1;
  for (const auto& pp : pm1.factors) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (mod_pow(u, order / pp.prime, p) != 1) break;
      order /= pp.prime;
    }
  }
  return {p, u, order, order == p - 1};
}

inline OrderRecord multiplicative_order(u64 u, u64 p) {
  if (!is_prime(p)) throw DomainError("multiplicative_order: modulus must be prime");
  return multiplicative_order(u, p, factorize(p - 1));
}

/// Primitivity test alone: u generates (Z/p)^* iff u^((p-1)/q) != 1 for
/// every prime q | p - 1.
inline bool is_primitive_root(u64 u, u64 p, const Factorization& pm1) {
  if (u % p == 0) return false;
  for (const auto& pp : pm1.factors) {
    if (mod_pow(u, (p - 1) / pp.prime, p) == 1) return false;
  }
  return true;
}

/// Smallest positive primitive root mod p (1 for p = 2).
inline u64 find_primitive_root(u64 p) {
  if (!is_prime(p)) throw DomainError("find_primitive_root: p must be prime");
  if (p == 2) return 1;
  const auto pm1 = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    if (is_primitive_root(g, p, pm1)) return g;
  }
  throw VerificationError("find_primitive_root: no generator found mod " + std::to_string(p));
}

}  // namespace artin

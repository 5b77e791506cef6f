#pragma once

// Elementary number-theoretic kernel: sieve with cumulative prime counts,
// Moebius/totient, trial-division factorization, signed p-adic valuations of
// Gamma(k)/k, the k0 divisibility threshold, and modular factorial/inverse.
// Everything here is a pure function; PrimeTable is immutable once built.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "squine/errors.hpp"

namespace squine {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

class PrimeTable {
public:
  explicit PrimeTable(std::vector<std::uint8_t> flags)
      : flags_(std::move(flags)), cumulative_(flags_.size(), 0) {
    u64 count = 0;
    for (u64 m = 0; m < flags_.size(); ++m) {
      count += flags_[m];
      cumulative_[m] = static_cast<std::uint32_t>(count);
    }
  }

  u64 limit() const { return flags_.size() - 1; }

  bool is_prime(u64 m) const {
    if (m > limit()) throw std::invalid_argument("PrimeTable: query above limit");
    return flags_[m] != 0;
  }

  // Pi(m): number of primes <= m.
  u64 pi(u64 m) const {
    if (m > limit()) throw std::invalid_argument("PrimeTable: query above limit");
    return cumulative_[m];
  }

private:
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint32_t> cumulative_;
};

inline PrimeTable sieve(u64 limit) {
  if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
  std::vector<std::uint8_t> flags(limit + 1, 1);
  flags[0] = flags[1] = 0;
  for (u64 p = 2; p * p <= limit; ++p) {
    if (!flags[p]) continue;
    for (u64 m = p * p; m <= limit; m += p) flags[m] = 0;
  }
  return PrimeTable(std::move(flags));
}

struct PrimePower {
  u64 p;
  std::uint32_t e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization by trial division, primes strictly increasing.
using Factorization = std::vector<PrimePower>;

inline Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline int mobius(u64 b) {
  if (b == 0) throw std::invalid_argument("mobius: b must be >= 1");
  const auto factors = factorize(b);
  for (const auto& f : factors)
    if (f.e > 1) return 0;
  return factors.size() % 2 == 0 ? 1 : -1;
}

inline u64 totient(u64 b) {
  if (b == 0) throw std::invalid_argument("totient: b must be >= 1");
  u64 phi = b;
  for (const auto& f : factorize(b)) phi -= phi / f.p;
  return phi;
}

namespace detail {

inline bool is_prime_trial(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

// v_p(m!) by Legendre's formula (an equality for factorials).
inline i64 vp_factorial(u64 m, u64 p) {
  i64 v = 0;
  for (u64 q = p; q <= m; q *= p) {
    v += static_cast<i64>(m / q);
    if (q > m / p) break;  // next q would overflow
  }
  return v;
}

inline i64 vp_integer(u64 k, u64 p) {
  i64 v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

// floor(log_p(k)): largest t with p^t <= k.
inline i64 floor_log(u64 k, u64 p) {
  i64 t = 0;
  u64 q = p;
  while (q <= k) {
    ++t;
    if (q > k / p) break;
    q *= p;
  }
  return t;
}

}  // namespace detail

// Signed valuation v_p(Gamma(k)/k) = v_p((k-1)!) - v_p(k). Negative when k
// carries more factors of p than (k-1)! does (e.g. k=4, p=2).
inline i64 vp_exact(u64 k, u64 p) {
  if (!detail::is_prime_trial(p)) throw std::invalid_argument("vp_exact: p must be prime");
  if (k < 1) throw std::invalid_argument("vp_exact: k must be >= 1");
  return detail::vp_factorial(k - 1, p) - detail::vp_integer(k, p);
}

// Lower bound sum_l floor((k-1)/p^l) - floor(log_p k); always <= vp_exact
// because v_p(k) <= floor(log_p k).
inline i64 vp_legendre_lower_bound(u64 k, u64 p) {
  if (!detail::is_prime_trial(p)) throw std::invalid_argument("vp_legendre_lower_bound: p must be prime");
  if (k < 2) throw std::invalid_argument("vp_legendre_lower_bound: k must be >= 2");
  return detail::vp_factorial(k - 1, p) - detail::floor_log(k, p);
}

// Least k0 >= 4 such that for every k > k0 and every prime p | b,
// v_p(Gamma(k)/k) >= v_p(b). The scan stops once 2*p*(e_p+2) consecutive
// values pass for the worst (p, e_p); the deficit grows like k/(p-1) past
// that point, so the window is conservative at the b <= 1e6 scales used.
inline u64 k0_for_b(u64 b) {
  if (b == 0) throw std::invalid_argument("k0_for_b: b must be >= 1");
  if (b == 1) return 4;  // composite-integrality threshold of the pi/2 case
  const auto factors = factorize(b);
  u64 window = 0;
  for (const auto& f : factors) window = std::max(window, 2 * f.p * (u64(f.e) + 2));
  u64 last_fail = 0;
  for (u64 k = 2;; ++k) {
    bool ok = true;
    for (const auto& f : factors) {
      if (vp_exact(k, f.p) < static_cast<i64>(f.e)) {
        ok = false;
        break;
      }
    }
    if (!ok) last_fail = k;
    if (k >= 4 + window && k - last_fail >= window) break;
  }
  return std::max<u64>(4, last_fail);
}

// m! mod modulus by iterated multiplication; zero short-circuits.
inline u64 mod_factorial(u64 m, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("mod_factorial: modulus must be >= 1");
  u64 acc = 1 % modulus;
  for (u64 i = 2; i <= m && acc != 0; ++i) acc = detail::mulmod(acc, i % modulus, modulus);
  return acc;
}

// u in {1..b-1} with k*u == 1 (mod b), by extended gcd.
inline u64 mod_inverse(u64 k, u64 b) {
  if (b < 2) throw std::invalid_argument("mod_inverse: b must be >= 2");
  i64 old_r = static_cast<i64>(k % b), r = static_cast<i64>(b);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw not_invertible_error("mod_inverse: gcd(k, b) != 1");
  i64 u = old_s % static_cast<i64>(b);
  if (u < 0) u += static_cast<i64>(b);
  return static_cast<u64>(u);
}

}  // namespace squine

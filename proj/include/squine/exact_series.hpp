#pragma once

// Exact evaluation of s(n, x) = sum_{k<=n} sin^2(x*Gamma(k)/k) for rational
// angles x = a*pi/b. The term's argument is reduced to a residue in pure
// integer arithmetic before the single floating sine, so the precision
// blowup of the naive evaluation never enters. Above the k0 threshold the
// fast path applies: composite terms vanish exactly and prime terms reduce
// to a closed form in the inverse of k modulo b.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squine/errors.hpp"
#include "squine/ntheory.hpp"
#include "squine/rational.hpp"
#include "squine/summation.hpp"

namespace squine {

struct SeriesResult {
  i64 n;
  std::string angle;
  double value;
  double error_bound;
  std::optional<std::vector<double>> terms;
};

// Gamma(k)/k as an exact reduced fraction.
inline BigRational r(u64 k) {
  if (k < 1) throw std::invalid_argument("r: k must be >= 1");
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
  return make_rational(fact, BigInt(static_cast<unsigned long>(k)));
}

namespace detail {

// sin^2(pi * m / q) for 0 < m < q, folding into [0, 1/2] first.
inline double sin_sq_of_fraction(u64 m, u64 q) {
  const u64 folded = std::min(m, q - m);
  const double s = std::sin(std::numbers::pi * (static_cast<double>(folded) / static_cast<double>(q)));
  return s * s;
}

// Floor-mod into [0, q).
inline u64 imod(i128 v, u64 q) {
  i128 m = v % static_cast<i128>(q);
  if (m < 0) m += static_cast<i128>(q);
  return static_cast<u64>(m);
}

}  // namespace detail

// Slow path: term via the residue m = a*(k-1)! mod bk; exact for every k.
inline double term_rational(u64 k, const RationalAngle& angle) {
  if (k < 1) throw std::invalid_argument("term_rational: k must be >= 1");
  const u64 q = angle.b * k;
  const u64 f = mod_factorial(k - 1, q);
  const u64 m = detail::imod(static_cast<i128>(angle.a) * static_cast<i128>(f), q);
  if (m == 0) return 0.0;
  return detail::sin_sq_of_fraction(m, q);
}

// Fast path, valid only above the k0 threshold of the angle's denominator:
// zero for composite k, closed form sin^2(pi*a*(k*u-1)/(b*k)) with
// u = k^{-1} mod b for prime k (Wilson residue -a mod k when b = 1).
inline double term_rational_fast(u64 k, const RationalAngle& angle, const PrimeTable& table, u64 k0) {
  if (k <= k0) throw fast_path_error("term_rational_fast: k <= k0, use term_rational");
  if (table.limit() < k) throw std::invalid_argument("term_rational_fast: table too small");
  if (!table.is_prime(k)) return 0.0;
  if (angle.b == 1) {
    const u64 m = detail::imod(angle.a, k);
    if (m == 0) return 0.0;
    return detail::sin_sq_of_fraction(m, k);
  }
  const u64 u = mod_inverse(k, angle.b);
  const u64 q = angle.b * k;
  const i128 num = static_cast<i128>(angle.a) * (static_cast<i128>(k) * u - 1);
  const u64 m = detail::imod(num, q);
  if (m == 0) return 0.0;
  return detail::sin_sq_of_fraction(m, q);
}

inline SeriesResult s_rational(i64 n, const RationalAngle& angle, const PrimeTable& table,
                               bool trace = false) {
  if (n < 1) throw std::invalid_argument("s_rational: n must be >= 1");
  if (table.limit() < static_cast<u64>(n)) throw std::invalid_argument("s_rational: table too small");
  const u64 k0 = k0_for_b(angle.b);
  CompensatedSum acc;
  std::optional<std::vector<double>> terms;
  if (trace) terms.emplace();
  for (u64 k = 1; k <= static_cast<u64>(n); ++k) {
    const double t = k <= k0 ? term_rational(k, angle) : term_rational_fast(k, angle, table, k0);
    acc.add(t);
    if (trace) terms->push_back(t);
  }
  double value = acc.value();
  if (value < 0) value = 0;
  if (value > static_cast<double>(n)) value = static_cast<double>(n);
  return SeriesResult{n, angle.describe(), value, std::ldexp(static_cast<double>(n), -50),
                      std::move(terms)};
}

inline SeriesResult s_rational(i64 n, const RationalAngle& angle, bool trace = false) {
  return s_rational(n, angle, sieve(std::max<i64>(n, 2)), trace);
}

// Pi(n) as the integer part of s(n, pi/2). Errors out rather than flooring
// silently if the sum sits within its error bound of an integer.
inline i64 pi_from_formula(i64 n, const PrimeTable& table) {
  if (n < 2) throw std::invalid_argument("pi_from_formula: n must be >= 2");
  const SeriesResult s = s_rational(n, RationalAngle(1, 2), table);
  if (std::fabs(s.value - std::round(s.value)) <= s.error_bound)
    throw ambiguous_floor_error("pi_from_formula: sum within error bound of an integer at n=" +
                                std::to_string(n));
  return static_cast<i64>(std::floor(s.value));
}

inline i64 pi_from_formula(i64 n) {
  if (n < 2) throw std::invalid_argument("pi_from_formula: n must be >= 2");
  return pi_from_formula(n, sieve(n));
}

// delta(n) = s(n, pi/2) - Pi(n); decreasing for n > 4 and inside (0, 1).
inline double delta(i64 n, const PrimeTable& table) {
  if (n < 2) throw std::invalid_argument("delta: n must be >= 2");
  const SeriesResult s = s_rational(n, RationalAngle(1, 2), table);
  return s.value - static_cast<double>(table.pi(n));
}

inline double delta(i64 n) {
  if (n < 2) throw std::invalid_argument("delta: n must be >= 2");
  return delta(n, sieve(n));
}

// Exact limit ratio 1/2 - mu(b)/(2*phi(b)) of s(n, a*pi/b) / Pi(n).
inline BigRational predicted_ratio(u64 b) {
  if (b == 0) throw std::invalid_argument("predicted_ratio: b must be >= 1");
  const BigRational half = make_rational(1, 2);
  const BigRational correction = make_rational(mobius(b), 2 * totient(b));
  BigRational out = half - correction;
  out.canonicalize();
  return out;
}

// (1/phi(b)) * sum over units v mod b of sin^2(pi*v/b); equals
// predicted_ratio(b) because the primitive b-th roots of unity sum to mu(b).
inline double character_sum_ratio(u64 b) {
  if (b < 2) throw std::invalid_argument("character_sum_ratio: b must be >= 2");
  CompensatedSum acc;
  u64 phi = 0;
  for (u64 v = 1; v < b; ++v) {
    if (std::gcd(v, b) != 1) continue;
    ++phi;
    acc.add(detail::sin_sq_of_fraction(v, b));
  }
  return acc.value() / static_cast<double>(phi);
}

}  // namespace squine

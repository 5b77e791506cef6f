#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace squine {

// Exact reduced fraction with unbounded integer parts.
using BigRational = mpq_class;
using BigInt = mpz_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigRational make_rational(long num, unsigned long den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigRational& q) { return q.get_str(); }

// Coprime pair (a, b) with b >= 1, denoting the angle x = a*pi/b.
// The constructor reduces to lowest terms so gcd(|a|, b) = 1 always holds.
struct RationalAngle {
  std::int64_t a;
  std::uint64_t b;

  RationalAngle(std::int64_t a_, std::uint64_t b_) : a(a_), b(b_) {
    if (b == 0) throw std::invalid_argument("RationalAngle: b must be >= 1");
    const std::uint64_t g = std::gcd<std::uint64_t>(a < 0 ? -static_cast<std::uint64_t>(a) : a, b);
    if (g > 1) {
      a /= static_cast<std::int64_t>(g);
      b /= g;
    }
  }

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;

  std::string describe() const { return "pi*" + std::to_string(a) + "/" + std::to_string(b); }
};

}  // namespace squine

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "squine/exact_series.hpp"

#include "oracle_helpers.hpp"

using namespace squine;

namespace {

// cos(2*r(k)*x) for x = a*pi/b, with the argument reduced exactly mod 2*pi
// in integer arithmetic: 2*a*Gamma(k) mod (2*b*k), then one double cosine.
double cos_twice_term_angle(u64 k, const RationalAngle& angle) {
  const u64 q = 2 * angle.b * k;
  const u64 f = mod_factorial(k - 1, q);
  i128 num = static_cast<i128>(2 * angle.a) * static_cast<i128>(f);
  i128 m = num % static_cast<i128>(q);
  if (m < 0) m += static_cast<i128>(q);
  const double frac = static_cast<double>(static_cast<u64>(m)) / static_cast<double>(angle.b * k);
  return std::cos(std::numbers::pi * frac);
}

}  // namespace

TEST_CASE("r(k) matches the leading exact values") {
  REQUIRE(r(1) == BigRational(1));
  REQUIRE(r(5) == make_rational(24, 5));
  REQUIRE(r(10) == BigRational(36288));
  REQUIRE(r(4) == make_rational(3, 2));

  SECTION("strictly increasing from k = 2") {
    BigRational prev = r(2);
    for (u64 k = 3; k <= 300; ++k) {
      const BigRational cur = r(k);
      REQUIRE(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("term_rational reproduces hand-reduced residues") {
  const RationalAngle half_pi(1, 2);
  REQUIRE(term_rational(1, half_pi) == 1.0);
  REQUIRE(std::fabs(term_rational(4, half_pi) - 0.5) < 1e-15);
  const double k7 = std::cos(std::numbers::pi / 14) * std::cos(std::numbers::pi / 14);
  REQUIRE(std::fabs(term_rational(7, half_pi) - k7) < 1e-15);
  REQUIRE(std::fabs(term_rational(7, half_pi) - 0.950484) < 1e-6);

  SECTION("range invariant over random angles") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 500; ++trial) {
      const u64 k = 1 + rng() % 400;
      const u64 b = 1 + rng() % 40;
      i64 a = static_cast<i64>(rng() % 50) - 25;
      if (a == 0) a = 1;
      const double t = term_rational(k, RationalAngle(a, b));
      REQUIRE(t >= 0.0);
      REQUIRE(t <= 1.0);
    }
  }

  SECTION("negative a folds to the same terms") {
    for (u64 k = 1; k <= 60; ++k)
      REQUIRE(term_rational(k, RationalAngle(-1, 2)) == term_rational(k, RationalAngle(1, 2)));
  }
}

TEST_CASE("fast path agrees with the slow residue path") {
  const PrimeTable table = sieve(4000);
  const RationalAngle half_pi(1, 2);

  REQUIRE(term_rational_fast(9, half_pi, table, 4) == 0.0);
  REQUIRE(std::fabs(term_rational_fast(7, half_pi, table, 4) - term_rational(7, half_pi)) < 1e-15);

  const RationalAngle third(1, 3);
  const u64 k0_third = k0_for_b(3);
  const double fast11 = term_rational_fast(11, third, table, k0_third);
  const double direct = std::sin(7 * std::numbers::pi / 11) * std::sin(7 * std::numbers::pi / 11);
  REQUIRE(std::fabs(fast11 - direct) < 1e-15);
  REQUIRE(std::fabs(fast11 - term_rational(11, third)) < 1e-12);

  REQUIRE_THROWS_AS(term_rational_fast(4, half_pi, table, 4), fast_path_error);

  SECTION("every angle with b <= 30, k in (k0, k0+500]") {
    for (u64 b = 1; b <= 30; ++b) {
      std::vector<i64> as = {1, -1};
      for (i64 cand = static_cast<i64>(b) - 1; cand > 1; --cand)
        if (std::gcd<u64>(cand, b) == 1) {
          as.push_back(cand);
          break;
        }
      const u64 k0 = k0_for_b(b);
      for (i64 a : as) {
        const RationalAngle angle(a, b);
        if (angle.b != b) continue;  // reduced away, already covered
        for (u64 k = k0 + 1; k <= k0 + 500; ++k)
          REQUIRE(std::fabs(term_rational_fast(k, angle, table, k0) - term_rational(k, angle)) <
                  1e-12);
      }
    }
  }
}

TEST_CASE("composite terms above 4 vanish exactly at pi/2") {
  const PrimeTable table = sieve(1500);
  const RationalAngle half_pi(1, 2);
  for (u64 k = 5; k <= 1500; ++k) {
    if (table.is_prime(k)) continue;
    REQUIRE(term_rational(k, half_pi) == 0.0);
    REQUIRE(term_rational_fast(k, half_pi, table, 4) == 0.0);
  }
}

TEST_CASE("s_rational partial sums") {
  const PrimeTable table = sieve(100);
  const RationalAngle half_pi(1, 2);

  const SeriesResult two = s_rational(2, half_pi, table);
  REQUIRE(std::fabs(two.value - 1.5) < 1e-13);
  REQUIRE(two.error_bound == std::ldexp(2.0, -50));

  // five-term direct evaluation: 1 + 1/2 + 3/4 + 1/2 + sin^2(2pi/5)
  const double t5 = std::sin(2 * std::numbers::pi / 5) * std::sin(2 * std::numbers::pi / 5);
  const SeriesResult five = s_rational(5, half_pi, table);
  REQUIRE(std::fabs(five.value - (2.75 + t5)) < 1e-13);
  REQUIRE(std::fabs(five.value - 3.654508) < 1e-6);

  const SeriesResult fifty = s_rational(50, half_pi, table);
  REQUIRE(std::fabs(fifty.value - 15.0 - 0.539005) < 1e-5);

  SECTION("result invariants and trace") {
    const SeriesResult traced = s_rational(60, half_pi, table, true);
    REQUIRE(traced.value >= 0.0);
    REQUIRE(traced.value <= 60.0);
    REQUIRE(traced.terms.has_value());
    REQUIRE(traced.terms->size() == 60);
    for (double t : *traced.terms) {
      REQUIRE(t >= 0.0);
      REQUIRE(t <= 1.0);
    }
  }

  SECTION("slow-only cross-check for small n") {
    CompensatedSum slow;
    for (u64 k = 1; k <= 500; ++k) slow.add(term_rational(k, half_pi));
    const PrimeTable big = sieve(500);
    REQUIRE(std::fabs(slow.value() - s_rational(500, half_pi, big).value) < 1e-10);
  }
}

TEST_CASE("floor identity and delta") {
  const PrimeTable table = sieve(1500);
  REQUIRE(pi_from_formula(4, table) == 2);
  REQUIRE(pi_from_formula(50, table) == 15);
  REQUIRE(pi_from_formula(2, table) == 1);
  REQUIRE_THROWS_AS(pi_from_formula(1, table), std::invalid_argument);

  for (i64 n = 2; n <= 1500; ++n) REQUIRE(pi_from_formula(n, table) == static_cast<i64>(table.pi(n)));

  REQUIRE(std::fabs(delta(2, table) - 0.5) < 1e-13);
  REQUIRE(std::fabs(delta(5, table) - 0.654508) < 1e-6);
  REQUIRE(std::fabs(delta(50, table) - 0.539005) < 1e-5);

  SECTION("delta window and monotone tail") {
    double prev = delta(5, table);
    for (i64 n = 2; n <= 1500; ++n) {
      const double d = delta(n, table);
      REQUIRE(d > 0.0);
      REQUIRE(d < 1.0);
      if (n > 5) {
        REQUIRE(d <= prev);
        prev = d;
      }
    }
  }
}

TEST_CASE("predicted ratio and character sum agree") {
  REQUIRE(predicted_ratio(2) == BigRational(1));
  REQUIRE(predicted_ratio(4) == make_rational(1, 2));
  REQUIRE(predicted_ratio(3) == make_rational(3, 4));
  REQUIRE(predicted_ratio(1) == BigRational(0));

  REQUIRE(std::fabs(character_sum_ratio(2) - 1.0) < 1e-15);
  REQUIRE(std::fabs(character_sum_ratio(3) - 0.75) < 1e-15);
  REQUIRE(std::fabs(character_sum_ratio(4) - 0.5) < 1e-15);
  REQUIRE_THROWS_AS(character_sum_ratio(1), std::invalid_argument);

  for (u64 b = 2; b <= 500; ++b)
    REQUIRE(std::fabs(character_sum_ratio(b) - predicted_ratio(b).get_d()) <= 1e-12);
}

TEST_CASE("terms obey the half-minus-half-cosine identity") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const u64 k = 1 + rng() % 50;
    const u64 b = 1 + rng() % 30;
    i64 a = static_cast<i64>(rng() % 40) - 20;
    if (a == 0) a = 3;
    const RationalAngle angle(a, b);
    const double lhs = term_rational(k, angle);
    const double rhs = 0.5 - cos_twice_term_angle(k, angle) / 2.0;
    REQUIRE(std::fabs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("rational angle normalization") {
  const RationalAngle reduced(6, 4);
  REQUIRE(reduced.a == 3);
  REQUIRE(reduced.b == 2);
  REQUIRE_THROWS_AS(RationalAngle(1, 0), std::invalid_argument);
  const RationalAngle negative(-6, 4);
  REQUIRE(negative.a == -3);
  REQUIRE(negative.b == 2);
}

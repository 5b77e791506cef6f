#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "squine/bigfloat_series.hpp"

using namespace squine;

TEST_CASE("required digits track the (k/e)^(k-2) law") {
  REQUIRE(required_digits(1) == kGuardDigits);
  REQUIRE(required_digits(2) == kGuardDigits);
  REQUIRE(required_digits(100) == 174);  // ceil(98*log10(100/e)) + guard
  const u64 k945 = required_digits(945);
  REQUIRE(k945 >= 2350);
  REQUIRE(k945 <= 2450);

  u64 prev = required_digits(3);
  for (u64 k = 4; k <= 2000; ++k) {
    const u64 cur = required_digits(k);
    REQUIRE(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("plan aggregates the worst term budget") {
  const PrecisionPlan p3 = plan(3);
  REQUIRE(p3.per_term.size() == 3);
  REQUIRE(p3.overall_digits == required_digits(3) + 1);

  REQUIRE(plan(945).overall_digits >= 2350);
  REQUIRE(plan(945).overall_digits <= 2450);
  REQUIRE(plan(1000).overall_digits >= 2400);
  REQUIRE(plan(1000).overall_digits <= 2600);
  REQUIRE(plan(1).overall_digits == kGuardDigits);
}

TEST_CASE("pi digits carry a sound error bound") {
  const BigReal rough = pi_digits(1);
  REQUIRE(std::fabs(rough.to_double() - 3.1) <= 0.1);
  REQUIRE(rough.error_bound() <= 0.1);

  const BigReal fifteen = pi_digits(15);
  REQUIRE(std::fabs(fifteen.to_double() - 3.141592653589793) <= 2e-15);

  SECTION("self-consistency at 2400 digits") {
    const BigReal a = pi_digits(2400);
    const BigReal b = pi_digits(2420);
    REQUIRE(a.to_fixed_string(7) == "3.141592");
    mpfr_t diff, tol;
    mpfr_init2(diff, 128);
    mpfr_init2(tol, 128);
    mpfr_sub(diff, a.raw(), b.raw(), MPFR_RNDA);
    mpfr_abs(diff, diff, MPFR_RNDU);
    mpfr_set_ui(tol, 10, MPFR_RNDN);
    mpfr_pow_si(tol, tol, -2400, MPFR_RNDU);
    REQUIRE(mpfr_cmp(diff, tol) <= 0);
    // reported bound is itself below 10^-2400
    REQUIRE(mpfr_cmp(a.raw_err(), tol) <= 0);
    mpfr_clear(diff);
    mpfr_clear(tol);
  }

  REQUIRE_THROWS_AS(pi_digits(3'000'000), resource_error);
}

TEST_CASE("term_real matches exact terms and enforces its gate") {
  BigInt gamma1 = 1;
  const BigReal half_pi_50 = realize_angle(RealAngleSpec::pi_rational(RationalAngle(1, 2)), 50);
  const TermValue t1 = term_real(1, half_pi_50, gamma1);
  REQUIRE(std::fabs(t1.value - 1.0) <= 1e-40);

  const BigReal half_pi = realize_angle(RealAngleSpec::pi_rational(RationalAngle(1, 2)), 120);
  BigInt gamma;
  mpz_fac_ui(gamma.get_mpz_t(), 4);  // Gamma(5)
  const TermValue t5 = term_real(5, half_pi, gamma);
  const double expected5 = (5.0 + std::sqrt(5.0)) / 8.0;  // sin^2(2pi/5)
  REQUIRE(std::fabs(t5.value - expected5) <= 1e-12);
  REQUIRE(std::fabs(t5.value - term_rational(5, RationalAngle(1, 2))) <= 1e-12);

  mpz_fac_ui(gamma.get_mpz_t(), 6);  // Gamma(7)
  const TermValue t7 = term_real(7, half_pi, gamma);
  REQUIRE(std::fabs(t7.value - term_rational(7, RationalAngle(1, 2))) <= 1e-12);

  SECTION("insufficient precision raises with the needed digit count") {
    mpz_fac_ui(gamma.get_mpz_t(), 49);  // Gamma(50)
    try {
      term_real(50, half_pi_50, gamma);
      FAIL("expected precision_error");
    } catch (const precision_error& e) {
      REQUIRE(e.required_digits == required_digits(50));
    }
  }
}

TEST_CASE("s_real evaluates reals, rationals and the unit angle") {
  const RealAngleSpec half_pi = RealAngleSpec::pi_rational(RationalAngle(1, 2));

  const SeriesResult real50 = s_real(50, half_pi);
  const SeriesResult exact50 = s_rational(50, RationalAngle(1, 2));
  REQUIRE(std::fabs(real50.value - exact50.value) <= 1e-10);
  REQUIRE(real50.error_bound <= 50 * 1e-12);

  const SeriesResult unit1 = s_real(1, RealAngleSpec::unit());
  const double sin1sq = std::sin(1.0) * std::sin(1.0);
  REQUIRE(std::fabs(unit1.value - sin1sq) <= 1e-12);

  const SeriesResult real300 = s_real(300, half_pi);
  const double frac = real300.value - 62.0;  // Pi(300) = 62
  REQUIRE(frac > 0.5);
  REQUIRE(frac < 0.6);
}

TEST_CASE("cross-engine agreement for small denominators") {
  const PrimeTable table = sieve(120);
  for (u64 b = 1; b <= 12; ++b) {
    const SeriesResult exact = s_rational(120, RationalAngle(1, b), table, true);
    const SeriesResult real = s_real(120, RealAngleSpec::pi_rational(RationalAngle(1, b)), 0, true);
    CompensatedSum se, sr;
    for (std::size_t i = 0; i < 120; ++i) {
      se.add((*exact.terms)[i]);
      sr.add((*real.terms)[i]);
      REQUIRE(std::fabs(se.value() - sr.value()) <= 1e-10);
    }
  }
}

TEST_CASE("decimal literals state their own precision") {
  const RealAngleSpec six = RealAngleSpec::decimal("3.14159");
  REQUIRE(six.stated_digits == 6);
  REQUIRE(RealAngleSpec::decimal("0.000123").stated_digits == 3);
  REQUIRE(RealAngleSpec::decimal("2").stated_digits == 1);

  SECTION("under-provisioned literal fails fast with the minimal count") {
    try {
      s_real(1000, six);
      FAIL("expected precision_error");
    } catch (const precision_error& e) {
      REQUIRE(e.required_digits == required_digits(1000));
      REQUIRE(e.required_digits >= 2400);
      REQUIRE(e.required_digits <= 2600);
    }
  }

  SECTION("100-digit pi literal cannot reach n = 200") {
    const std::string pi100 = pi_digits(110).to_fixed_string(100);
    REQUIRE_THROWS_AS(s_real(200, RealAngleSpec::decimal(pi100)), precision_error);
  }

  SECTION("well-provisioned literal agrees with the pi-rational route") {
    const u64 digits = plan(40).overall_digits + 10;
    const std::string lit = pi_digits(digits + 5).to_fixed_string(digits);
    const SeriesResult via_literal = s_real(40, RealAngleSpec::decimal(lit));
    const SeriesResult via_pi = s_real(40, RealAngleSpec::pi_rational(RationalAngle(1, 1)));
    REQUIRE(std::fabs(via_literal.value - via_pi.value) <= 1e-10);
  }
}

TEST_CASE("error bounds are sound against recomputation at double precision") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const i64 n = 60 + static_cast<i64>(rng() % 60);
    RealAngleSpec spec = RealAngleSpec::unit();
    const int kind = trial % 3;
    if (kind == 0) {
      const u64 b = 1 + rng() % 12;
      i64 a = 1 + static_cast<i64>(rng() % 3);
      while (std::gcd<u64>(a, b) != 1) ++a;
      spec = RealAngleSpec::pi_rational(RationalAngle(a, b));
    } else if (kind == 1) {
      const u64 digits = plan(static_cast<u64>(n)).overall_digits + 20;
      std::string lit = "0.";
      for (u64 i = 0; i < digits; ++i) lit += static_cast<char>('0' + rng() % 10);
      spec = RealAngleSpec::decimal(lit);
    }
    const u64 planned = plan(static_cast<u64>(n)).overall_digits;
    const SeriesResult at_plan = s_real(n, spec, 0);
    const SeriesResult at_double = s_real(n, spec, 2 * planned);
    REQUIRE(std::fabs(at_plan.value - at_double.value) <= at_plan.error_bound);
  }
}

#pragma once

// Arbitrary-precision floating value with an attached absolute-error bound.
// The bound is carried in a second low-precision mpfr value and every
// operation propagates it conservatively (round-up arithmetic, one full ulp
// charged per correctly-rounded MPFR operation).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "squine/errors.hpp"
#include "squine/rational.hpp"

namespace squine {

inline mpfr_prec_t bits_for_digits(std::uint64_t digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873626)) + 16;
}

class BigReal {
public:
  explicit BigReal(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
    init_err();
  }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    init_err();
    mpfr_set(err_, o.err_, MPFR_RNDU);
  }

  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, 64);
    init_err();
    mpfr_swap(v_, o.v_);
    mpfr_swap(err_, o.err_);
  }

  BigReal& operator=(BigReal o) noexcept {
    mpfr_swap(v_, o.v_);
    mpfr_swap(err_, o.err_);
    return *this;
  }

  ~BigReal() {
    mpfr_clear(v_);
    mpfr_clear(err_);
  }

  static BigReal from_ui(std::uint64_t value, mpfr_prec_t prec) {
    BigReal out(prec);
    mpfr_set_ui(out.v_, static_cast<unsigned long>(value), MPFR_RNDN);
    return out;
  }

  // Parse a base-10 literal; the only error charged here is the binary
  // representation ulp. Truncation uncertainty of the literal itself is the
  // caller's to add (add_error_pow10).
  static BigReal parse_decimal(const std::string& literal, mpfr_prec_t prec) {
    BigReal out(prec);
    if (mpfr_set_str(out.v_, literal.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigReal: unparsable decimal literal '" + literal + "'");
    out.charge_ulp(out.v_);
    return out;
  }

  // pi with absolute error < 10^-digits (correctly rounded const_pi).
  static BigReal pi(std::uint64_t digits) {
    if (digits < 1) throw std::invalid_argument("pi: digits must be >= 1");
    if (digits > 2'000'000) throw resource_error("pi: digit request beyond resource cap");
    BigReal out(bits_for_digits(digits));
    mpfr_const_pi(out.v_, MPFR_RNDN);
    out.charge_ulp(out.v_);
    return out;
  }

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }

  std::uint64_t digits10() const {
    return static_cast<std::uint64_t>(static_cast<double>(prec_bits()) / 3.3219280948873626);
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  double error_bound() const { return mpfr_get_d(err_, MPFR_RNDU); }

  void add_error_pow10(std::int64_t exp10) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_ui(t, 10, MPFR_RNDU);
    mpfr_pow_si(t, t, static_cast<long>(exp10), MPFR_RNDU);
    mpfr_add(err_, err_, t, MPFR_RNDU);
    mpfr_clear(t);
  }

  // this * m for an exact unbounded integer m.
  BigReal times_integer(const BigInt& m) const {
    BigReal out(prec_bits());
    mpfr_mul_z(out.v_, v_, m.get_mpz_t(), MPFR_RNDN);
    mpfr_t am;
    mpfr_init2(am, 64);
    mpfr_set_z(am, m.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(am, am, MPFR_RNDU);
    mpfr_mul(out.err_, err_, am, MPFR_RNDU);
    mpfr_clear(am);
    out.charge_ulp(out.v_);
    return out;
  }

  BigReal times_si(std::int64_t m) const {
    BigReal out(prec_bits());
    mpfr_mul_si(out.v_, v_, static_cast<long>(m), MPFR_RNDN);
    const unsigned long am = m < 0 ? -static_cast<unsigned long>(m) : static_cast<unsigned long>(m);
    mpfr_mul_ui(out.err_, err_, am, MPFR_RNDU);
    out.charge_ulp(out.v_);
    return out;
  }

  BigReal divided_by_ui(std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("BigReal: division by zero");
    BigReal out(prec_bits());
    mpfr_div_ui(out.v_, v_, static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_div_ui(out.err_, err_, static_cast<unsigned long>(d), MPFR_RNDU);
    out.charge_ulp(out.v_);
    return out;
  }

  // this - q*pi with q the nearest integer to this/pi; |result| stays O(1)
  // and the catastrophic cancellation is exactly the point: absolute errors
  // just add.
  BigReal reduced_mod_pi(const BigReal& pi_val) const {
    const mpfr_prec_t prec = prec_bits();
    BigReal out(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_div(t, v_, pi_val.v_, MPFR_RNDN);
    mpz_class q;
    mpfr_get_z(q.get_mpz_t(), t, MPFR_RNDN);
    mpfr_mul_z(t, pi_val.v_, q.get_mpz_t(), MPFR_RNDN);
    mpfr_sub(out.v_, v_, t, MPFR_RNDN);
    // err = err_y + |q| * err_pi + ulp(q*pi) + ulp(z)
    mpfr_t aq;
    mpfr_init2(aq, 64);
    mpfr_set_z(aq, q.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(aq, aq, MPFR_RNDU);
    mpfr_mul(aq, aq, pi_val.err_, MPFR_RNDU);
    mpfr_add(out.err_, err_, aq, MPFR_RNDU);
    out.charge_ulp(t);
    out.charge_ulp(out.v_);
    mpfr_clear(aq);
    mpfr_clear(t);
    return out;
  }

  // sin(this)^2 as a double, plus a propagated absolute error bound.
  void sin_squared(double& value, double& error) const {
    const mpfr_prec_t prec = prec_bits();
    mpfr_t s, e;
    mpfr_init2(s, prec);
    mpfr_init2(e, 64);
    mpfr_sin(s, v_, MPFR_RNDN);
    // |sin'| <= 1, so the input error passes through unscaled.
    mpfr_set(e, err_, MPFR_RNDU);
    add_ulp_of(e, s);
    // squaring: err <= 2*err_sin + err_sin^2 + ulp
    mpfr_t e2;
    mpfr_init2(e2, 64);
    mpfr_sqr(e2, e, MPFR_RNDU);
    mpfr_mul_2ui(e, e, 1, MPFR_RNDU);
    mpfr_add(e, e, e2, MPFR_RNDU);
    mpfr_sqr(s, s, MPFR_RNDN);
    add_ulp_of(e, s);
    value = mpfr_get_d(s, MPFR_RNDN);
    error = mpfr_get_d(e, MPFR_RNDU) + 0x1p-53;
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    mpfr_clear(e2);
    mpfr_clear(e);
    mpfr_clear(s);
  }

  // Fixed-notation rendering with the given count of significant digits,
  // truncated toward zero (used for literals and report prefixes).
  std::string to_fixed_string(std::size_t significant) const {
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, significant, v_, MPFR_RNDZ);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
      sign = "-";
      digits.erase(0, 1);
    }
    std::string out;
    if (exp <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
      out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
      out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
    }
    return sign + out;
  }

  const mpfr_t& raw() const { return v_; }
  const mpfr_t& raw_err() const { return err_; }

private:
  void init_err() {
    mpfr_init2(err_, 64);
    mpfr_set_zero(err_, 1);
  }

  static void add_ulp_of(mpfr_t err, const mpfr_t v) {
    if (!mpfr_regular_p(v)) return;  // exact zero contributes nothing
    const mpfr_exp_t e = mpfr_get_exp(v) - mpfr_get_prec(v);
    mpfr_t u;
    mpfr_init2(u, 8);
    mpfr_set_ui_2exp(u, 1, e, MPFR_RNDU);
    mpfr_add(err, err, u, MPFR_RNDU);
    mpfr_clear(u);
  }

  void charge_ulp(const mpfr_t v) { add_ulp_of(err_, v); }

  mpfr_t v_;
  mpfr_t err_;
};

// pi with absolute error below 10^-d; digits are generated, never pasted.
inline BigReal pi_digits(std::uint64_t d) { return BigReal::pi(d); }

}  // namespace squine

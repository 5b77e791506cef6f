#pragma once

// Precision-planned evaluation of s(n, x) for general real x. The term at
// index k needs x to roughly (k/e)^(k-2) absolute accuracy, i.e.
// (k-2)*log10(k/e) decimal digits; the planner adds a fixed guard and the
// evaluator keeps Gamma(k) as an exact integer so the only rounding happens
// in big-float multiply / mod-pi / sin steps whose error is tracked.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squine/bigreal.hpp"
#include "squine/errors.hpp"
#include "squine/exact_series.hpp"
#include "squine/rational.hpp"
#include "squine/summation.hpp"

namespace squine {

inline constexpr u64 kGuardDigits = 20;

// Decimal digits of x needed for the k-th term to be meaningful.
inline u64 required_digits(u64 k) {
  if (k < 1) throw std::invalid_argument("required_digits: k must be >= 1");
  if (k <= 2) return kGuardDigits;
  const double d = (static_cast<double>(k) - 2.0) * std::log10(static_cast<double>(k) / std::numbers::e);
  return static_cast<u64>(std::ceil(d)) + kGuardDigits;
}

struct PrecisionBudget {
  u64 k;
  u64 required_decimal_digits;
  u64 guard_digits;
};

struct PrecisionPlan {
  std::vector<PrecisionBudget> per_term;
  u64 overall_digits;  // max over k, plus ceil(log10 n) carry digits
};

inline PrecisionPlan plan(u64 n) {
  if (n < 1) throw std::invalid_argument("plan: n must be >= 1");
  PrecisionPlan p;
  p.per_term.reserve(n);
  u64 worst = 0;
  for (u64 k = 1; k <= n; ++k) {
    const u64 d = required_digits(k);
    worst = std::max(worst, d);
    p.per_term.push_back({k, d, kGuardDigits});
  }
  const u64 carry = static_cast<u64>(std::ceil(std::log10(static_cast<double>(n))));
  p.overall_digits = worst + carry;
  return p;
}

struct RealAngleSpec {
  enum class Kind { PiRational, DecimalLiteral, Unit };

  Kind kind;
  RationalAngle angle{1, 2};     // PiRational payload
  std::string literal;           // DecimalLiteral payload
  u64 stated_digits = 0;         // significant digits claimed by the literal

  static RealAngleSpec pi_rational(const RationalAngle& a) {
    RealAngleSpec s;
    s.kind = Kind::PiRational;
    s.angle = a;
    return s;
  }

  static RealAngleSpec decimal(const std::string& literal, u64 stated = 0) {
    RealAngleSpec s;
    s.kind = Kind::DecimalLiteral;
    s.literal = literal;
    u64 significant = 0;
    bool seen_nonzero = false;
    for (char c : literal) {
      if (c < '0' || c > '9') continue;
      if (c != '0') seen_nonzero = true;
      if (seen_nonzero) ++significant;
    }
    significant = std::max<u64>(significant, 1);
    s.stated_digits = stated ? std::min(stated, significant) : significant;
    return s;
  }

  static RealAngleSpec unit() {
    RealAngleSpec s;
    s.kind = Kind::Unit;
    return s;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::PiRational: return angle.describe();
      case Kind::DecimalLiteral: return literal;
      case Kind::Unit: return "1";
    }
    return "?";
  }
};

struct TermValue {
  double value;  // sin^2, in [0, 1]
  double error;  // absolute bound
};

// One term sin^2(x*Gamma(k)/k mod pi). gamma_k must be Gamma(k) exactly; x
// must carry at least required_digits(k) decimal digits of precision.
inline TermValue term_real(u64 k, const BigReal& x, const BigInt& gamma_k,
                           const BigReal* pi_hint = nullptr) {
  if (k < 1) throw std::invalid_argument("term_real: k must be >= 1");
  const u64 need = required_digits(k);
  if (x.digits10() < need)
    throw precision_error(need, "term_real: x carries " + std::to_string(x.digits10()) +
                                    " digits, term k=" + std::to_string(k) + " needs " +
                                    std::to_string(need));
  std::optional<BigReal> local_pi;
  if (!pi_hint) {
    local_pi.emplace(BigReal::pi(x.digits10()));
    pi_hint = &*local_pi;
  }
  const BigReal reduced = x.times_integer(gamma_k).divided_by_ui(k).reduced_mod_pi(*pi_hint);
  TermValue t{};
  reduced.sin_squared(t.value, t.error);
  if (t.error > 1e-12)
    throw precision_error(need, "term_real: propagated error " + std::to_string(t.error) +
                                    " exceeds 1e-12 at k=" + std::to_string(k));
  return t;
}

// Working precision actually used for a given overall digit budget.
inline mpfr_prec_t working_bits(u64 overall_digits) { return bits_for_digits(overall_digits) + 32; }

namespace detail {

inline i64 places_after_dot(const std::string& literal) {
  const auto dot = literal.find('.');
  if (dot == std::string::npos) return 0;
  i64 places = 0;
  for (std::size_t i = dot + 1; i < literal.size(); ++i)
    if (literal[i] >= '0' && literal[i] <= '9') ++places;
  return places;
}

}  // namespace detail

// Build the working BigReal for a spec at the given digit budget.
inline BigReal realize_angle(const RealAngleSpec& spec, u64 digits) {
  const mpfr_prec_t prec = working_bits(digits);
  switch (spec.kind) {
    case RealAngleSpec::Kind::PiRational:
      return BigReal::pi(digits).times_si(spec.angle.a).divided_by_ui(spec.angle.b);
    case RealAngleSpec::Kind::DecimalLiteral: {
      BigReal x = BigReal::parse_decimal(spec.literal, prec);
      const i64 places = detail::places_after_dot(spec.literal);
      if (places > 0) x.add_error_pow10(-places);  // one unit in the last given place
      return x;
    }
    case RealAngleSpec::Kind::Unit:
      return BigReal::from_ui(1, prec);
  }
  throw std::logic_error("realize_angle: bad kind");
}

// s(n, x) with incremental exact Gamma(k) and per-term error accumulation.
// override_digits = 0 means "use plan(n)".
inline SeriesResult s_real(i64 n, const RealAngleSpec& spec, u64 override_digits = 0,
                           bool trace = false) {
  if (n < 1) throw std::invalid_argument("s_real: n must be >= 1");
  const u64 digits = override_digits ? override_digits : plan(static_cast<u64>(n)).overall_digits;
  if (spec.kind == RealAngleSpec::Kind::DecimalLiteral) {
    const u64 need = required_digits(static_cast<u64>(n));
    if (spec.stated_digits < need)
      throw precision_error(need, "s_real: literal states " + std::to_string(spec.stated_digits) +
                                      " digits, n=" + std::to_string(n) + " needs " +
                                      std::to_string(need));
  }
  const BigReal x = realize_angle(spec, digits);
  const BigReal pi_val = BigReal::pi(digits);
  BigInt gamma = 1;  // Gamma(1)
  CompensatedSum acc;
  double err_total = 0.0;
  std::optional<std::vector<double>> terms;
  if (trace) terms.emplace();
  for (u64 k = 1; k <= static_cast<u64>(n); ++k) {
    const TermValue t = term_real(k, x, gamma, &pi_val);
    acc.add(t.value);
    err_total += t.error;
    if (trace) terms->push_back(t.value);
    gamma *= k;  // Gamma(k+1)
  }
  double value = acc.value();
  if (value < 0) value = 0;
  if (value > static_cast<double>(n)) value = static_cast<double>(n);
  return SeriesResult{n, spec.describe(), value,
                      err_total + std::ldexp(static_cast<double>(n), -50), std::move(terms)};
}

}  // namespace squine

#pragma once

// Experiment drivers: the rational-multiple ratio sweep, the
// almost-everywhere n/2 sampling, exact lacunarity of r(k) = Gamma(k)/k,
// the exact fourth-moment count over signed quadruples, and the W(eps)
// density demonstration.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "squine/bigfloat_series.hpp"
#include "squine/bigreal.hpp"
#include "squine/errors.hpp"
#include "squine/exact_series.hpp"
#include "squine/format.hpp"
#include "squine/ntheory.hpp"
#include "squine/rational.hpp"

namespace squine {

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  std::optional<u64> seed;
  double duration_seconds = 0.0;  // in-memory only, never serialized
};

namespace detail {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

enum class SweepAPolicy { One, AllCoprime };

inline ExperimentReport rational_sweep(const std::vector<u64>& bs, SweepAPolicy policy, i64 n,
                                       const PrimeTable& table) {
  if (n < 100) throw std::invalid_argument("rational_sweep: n must be >= 100");
  for (u64 b : bs)
    if (b < 2) throw std::invalid_argument("rational_sweep: every b must be >= 2");
  detail::Stopwatch watch;
  ExperimentReport rep;
  rep.name = "rational-sweep";
  rep.parameters = {{"n", std::to_string(n)},
                    {"a_policy", policy == SweepAPolicy::One ? "one" : "all-coprime"}};
  rep.columns = {"b", "a", "measured", "predicted", "deviation"};
  const double pi_n = static_cast<double>(table.pi(n));
  for (u64 b : bs) {
    std::vector<i64> as;
    if (policy == SweepAPolicy::One) {
      as.push_back(1);
    } else {
      for (u64 a = 1; a < b; ++a)
        if (std::gcd(a, b) == 1) as.push_back(static_cast<i64>(a));
    }
    for (i64 a : as) {
      const double measured = s_rational(n, RationalAngle(a, b), table).value / pi_n;
      const double predicted = predicted_ratio(b).get_d();
      rep.rows.push_back({std::to_string(b), std::to_string(a), fmt_float(measured),
                          fmt_float(predicted), fmt_float(std::fabs(measured - predicted))});
    }
  }
  rep.duration_seconds = watch.seconds();
  return rep;
}

enum class SamplePolicy { RandomUniform, Unit };

namespace detail {

// Uniform integer in [0, bound) from the raw mt19937_64 stream; the word
// sequence is pinned by the standard, so reports replay across platforms.
inline BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  while (true) {
    for (auto& w : buf) w = rng();
    if (bits % 64) buf.back() &= (std::uint64_t(1) << (bits % 64)) - 1;
    BigInt candidate;
    mpz_import(candidate.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (candidate < bound) return candidate;
  }
}

// Decimal literal "d.ddd..." for value / 10^frac_digits.
inline std::string decimal_literal(const BigInt& value, u64 frac_digits) {
  std::string digits = value.get_str();
  if (digits.size() < frac_digits + 1)
    digits.insert(digits.begin(), frac_digits + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac_digits, ".");
  return digits;
}

}  // namespace detail

// Draws x uniform on [0, 2*pi) as decimal literals at planned precision and
// reports s_real(n, x)/n per sample. override_digits = 0 uses plan(n).
inline ExperimentReport ae_sample(u64 samples, i64 n, u64 seed, SamplePolicy policy,
                                  u64 override_digits = 0) {
  if (samples < 1) throw std::invalid_argument("ae_sample: samples must be >= 1");
  if (n < 1) throw std::invalid_argument("ae_sample: n must be >= 1");
  detail::Stopwatch watch;
  const u64 planned = override_digits ? override_digits : plan(static_cast<u64>(n)).overall_digits;
  const u64 frac_digits = planned + 40;  // margin so significant digits never fall short
  ExperimentReport rep;
  rep.name = "ae-sample";
  rep.parameters = {{"samples", std::to_string(samples)},
                    {"n", std::to_string(n)},
                    {"x_policy", policy == SamplePolicy::Unit ? "unit" : "random"},
                    {"digits", std::to_string(frac_digits)},
                    {"generator", "mt19937_64+rejection"}};
  rep.columns = {"sample", "x_prefix", "ratio"};
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  BigInt bound;
  if (policy == SamplePolicy::RandomUniform) {
    // floor(2*pi * 10^frac_digits), so candidates/10^frac stay below 2*pi
    BigReal two_pi = BigReal::pi(frac_digits + 8).times_si(2);
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    mpfr_t scaled;
    mpfr_init2(scaled, mpfr_get_prec(two_pi.raw()) + 64);
    mpfr_mul_z(scaled, two_pi.raw(), pow10.get_mpz_t(), MPFR_RNDZ);
    mpfr_get_z(bound.get_mpz_t(), scaled, MPFR_RNDZ);
    mpfr_clear(scaled);
  }

  std::vector<double> ratios;
  for (u64 i = 0; i < samples; ++i) {
    RealAngleSpec spec = RealAngleSpec::unit();
    std::string prefix = "1";
    if (policy == SamplePolicy::RandomUniform) {
      const BigInt m = detail::uniform_below(rng, bound);
      const std::string literal = detail::decimal_literal(m, frac_digits);
      spec = RealAngleSpec::decimal(literal);
      prefix = literal.substr(0, 24);
    }
    const double ratio = s_real(n, spec, override_digits).value / static_cast<double>(n);
    ratios.push_back(ratio);
    rep.rows.push_back({std::to_string(i), prefix, fmt_float(ratio)});
  }

  double mean = 0.0;
  for (double v : ratios) mean += v;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double v : ratios) var += (v - mean) * (v - mean);
  const double stddev = ratios.size() > 1 ? std::sqrt(var / static_cast<double>(ratios.size() - 1)) : 0.0;
  rep.summary = {{"mean", fmt_float(mean)}, {"stddev", fmt_float(stddev)}};
  rep.duration_seconds = watch.seconds();
  return rep;
}

// Exact check of r(k+1) > 3*r(k); the only failures live at k <= 4.
inline ExperimentReport lacunarity_check(u64 kmax) {
  if (kmax < 6) throw std::invalid_argument("lacunarity_check: kmax must be >= 6");
  detail::Stopwatch watch;
  ExperimentReport rep;
  rep.name = "lacunarity";
  rep.parameters = {{"kmax", std::to_string(kmax)}};
  rep.columns = {"k", "growth_ratio", "pass"};
  std::string failures;
  u64 failure_count = 0;
  BigInt gamma = 1;  // Gamma(1)
  BigRational rk = make_rational(BigInt(1), BigInt(1));
  for (u64 k = 1; k < kmax; ++k) {
    gamma *= k;  // Gamma(k+1)
    const BigRational rk1 = make_rational(gamma, BigInt(static_cast<unsigned long>(k + 1)));
    const BigRational growth = rk1 / rk;
    const bool pass = rk1 > 3 * rk;
    if (!pass) {
      ++failure_count;
      if (!failures.empty()) failures += " ";
      failures += std::to_string(k);
    }
    rep.rows.push_back({std::to_string(k), fmt_float(growth.get_d()), pass ? "1" : "0"});
    rk = rk1;
  }
  rep.summary = {{"failures", failures}, {"failure_count", std::to_string(failure_count)}};
  rep.duration_seconds = watch.seconds();
  return rep;
}

// Signed index quadruple with sum(s_i * r(k_i)) = 0 evaluated exactly.
struct SignedQuadruple {
  std::array<std::uint32_t, 4> k;
  std::array<std::int8_t, 4> s;
};

struct QuadrupleCount {
  u64 solutions = 0;               // N(n), over all 16*n^4 ordered sign-index tuples
  u64 structural_violations = 0;   // max index > 4 not appearing twice with both signs
  std::vector<SignedQuadruple> examples;
};

// Counts solutions of +-r(k1)+-r(k2)+-r(k3)+-r(k4) = 0 by fixing the first
// three legs and looking the forced fourth value up in an exact-rational
// index; this enumerates the identical tuple space as the 16*n^4 scan.
inline QuadrupleCount count_cancellations(u64 n) {
  if (n < 1) throw std::invalid_argument("count_cancellations: n must be >= 1");
  if (n > 24) throw resource_error("count_cancellations: n > 24 exceeds the brute-force budget");
  std::vector<BigRational> rv(n + 1);
  std::map<BigRational, std::uint32_t> index;
  BigInt gamma = 1;
  for (u64 k = 1; k <= n; ++k) {
    rv[k] = make_rational(gamma, BigInt(static_cast<unsigned long>(k)));
    index.emplace(rv[k], static_cast<std::uint32_t>(k));
    gamma *= k;
  }
  QuadrupleCount out;
  const std::int8_t signs[2] = {1, -1};
  for (u64 k1 = 1; k1 <= n; ++k1)
    for (std::int8_t s1 : signs)
      for (u64 k2 = 1; k2 <= n; ++k2)
        for (std::int8_t s2 : signs) {
          const BigRational partial2 = (s1 > 0 ? rv[k1] : -rv[k1]) + (s2 > 0 ? rv[k2] : -rv[k2]);
          for (u64 k3 = 1; k3 <= n; ++k3)
            for (std::int8_t s3 : signs) {
              const BigRational total = partial2 + (s3 > 0 ? rv[k3] : -rv[k3]);
              const int sign_total = sgn(total);
              if (sign_total == 0) continue;  // fourth leg is never zero
              const BigRational target = sign_total > 0 ? total : -total;
              const auto it = index.find(target);
              if (it == index.end()) continue;
              SignedQuadruple q{{static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k2),
                                static_cast<std::uint32_t>(k3), it->second},
                               {s1, s2, s3, static_cast<std::int8_t>(sign_total > 0 ? -1 : 1)}};
              ++out.solutions;
              const std::uint32_t maxk = std::max({q.k[0], q.k[1], q.k[2], q.k[3]});
              if (maxk > 4) {
                int occur = 0, plus = 0, minus = 0;
                for (int i = 0; i < 4; ++i) {
                  if (q.k[i] != maxk) continue;
                  ++occur;
                  (q.s[i] > 0 ? plus : minus)++;
                }
                if (occur < 2 || plus == 0 || minus == 0) ++out.structural_violations;
              }
              out.examples.push_back(q);
            }
        }
  return out;
}

inline ExperimentReport cancellation_count(u64 n) {
  detail::Stopwatch watch;
  const QuadrupleCount c = count_cancellations(n);
  ExperimentReport rep;
  rep.name = "cancellation";
  rep.parameters = {{"n", std::to_string(n)}};
  rep.columns = {"k1", "k2", "k3", "k4", "s1", "s2", "s3", "s4"};
  for (const auto& q : c.examples) {
    rep.rows.push_back({std::to_string(q.k[0]), std::to_string(q.k[1]), std::to_string(q.k[2]),
                        std::to_string(q.k[3]), std::to_string(q.s[0]), std::to_string(q.s[1]),
                        std::to_string(q.s[2]), std::to_string(q.s[3])});
  }
  rep.summary = {{"n_solutions", std::to_string(c.solutions)},
                 {"solutions_per_n2",
                  fmt_float(static_cast<double>(c.solutions) / (static_cast<double>(n) * n))},
                 {"structural_violations", std::to_string(c.structural_violations)}};
  rep.duration_seconds = watch.seconds();
  return rep;
}

// Exact fourth moment over the compact group: N(n)/256, by orthogonality of
// characters with each term contributing -(alpha_r + alpha_-r)/4.
inline BigRational fourth_moment_exact(u64 n) {
  const QuadrupleCount c = count_cancellations(n);
  return make_rational(BigInt(static_cast<unsigned long>(c.solutions)), BigInt(256));
}

// Finds a rational angle a*pi/b near x0 whose predicted doubled ratio sits
// within eps of 1, then exhibits an n where the measured ratio lands in the
// window [1-eps, 1+eps].
inline ExperimentReport weps_demo(double x0, double eps, u64 bmax) {
  if (!(eps > 0)) throw std::invalid_argument("weps_demo: eps must be > 0");
  if (bmax < 10) throw std::invalid_argument("weps_demo: bmax must be >= 10");
  detail::Stopwatch watch;
  ExperimentReport rep;
  rep.name = "weps-demo";
  rep.parameters = {{"x0", fmt_float(x0)}, {"eps", fmt_float(eps)}, {"bmax", std::to_string(bmax)}};
  rep.columns = {"n", "measured_2s_over_pi", "in_window"};

  bool have_best = false;
  double best_dist = 0.0;
  i64 best_a = 0;
  u64 best_b = 0;
  for (u64 b = 2; b <= bmax; ++b) {
    // admissible iff |2*predicted_ratio(b) - 1| = |mu(b)|/phi(b) < eps
    const double dev = std::fabs(static_cast<double>(mobius(b))) / static_cast<double>(totient(b));
    if (!(dev < eps)) continue;
    const i64 a0 = std::llround(x0 * static_cast<double>(b) / std::numbers::pi);
    for (i64 a : {a0 - 1, a0, a0 + 1}) {
      if (a == 0) continue;
      if (std::gcd<u64>(a < 0 ? -static_cast<u64>(a) : a, b) != 1) continue;
      const double dist = std::fabs(static_cast<double>(a) * std::numbers::pi / static_cast<double>(b) - x0);
      if (!have_best || dist < best_dist) {
        have_best = true;
        best_dist = dist;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (!have_best) throw not_found_error("weps_demo: no admissible b <= " + std::to_string(bmax));

  const RationalAngle angle(best_a, best_b);
  BigRational predicted2 = 2 * predicted_ratio(best_b);
  predicted2.canonicalize();
  bool found = false;
  u64 chosen_n = 0;
  double chosen_measured = 0.0;
  for (u64 n : {u64(1000), u64(10000), u64(100000), u64(1000000)}) {
    const PrimeTable table = sieve(n);
    const double measured =
        2.0 * s_rational(static_cast<i64>(n), angle, table).value / static_cast<double>(table.pi(n));
    const bool in_window = measured >= 1.0 - eps && measured <= 1.0 + eps;
    rep.rows.push_back({std::to_string(n), fmt_float(measured), in_window ? "1" : "0"});
    if (in_window) {
      found = true;
      chosen_n = n;
      chosen_measured = measured;
      break;
    }
  }
  if (!found) throw not_found_error("weps_demo: no n in the ladder landed in the window");
  rep.summary = {{"a", std::to_string(best_a)},
                 {"b", std::to_string(best_b)},
                 {"angle", angle.describe()},
                 {"distance_to_x0", fmt_float(best_dist)},
                 {"predicted_2ratio", fmt_rational(predicted2)},
                 {"n", std::to_string(chosen_n)},
                 {"measured_2ratio", fmt_float(chosen_measured)}};
  rep.duration_seconds = watch.seconds();
  return rep;
}

}  // namespace squine

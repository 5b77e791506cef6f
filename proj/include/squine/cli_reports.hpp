#pragma once

// Report builders behind the CLI subcommands that have golden-file or
// byte-stability obligations; the CLI stays a thin argument-parsing shell.

#include <string>

#include "squine/bigfloat_series.hpp"
#include "squine/exact_series.hpp"
#include "squine/experiments.hpp"
#include "squine/format.hpp"

namespace squine {

enum class PiCountMethod { Formula, Sieve, Both };

inline ExperimentReport pi_count_report(i64 n, PiCountMethod method, const PrimeTable& table) {
  if (n < 2) throw std::invalid_argument("pi-count: n must be >= 2");
  ExperimentReport rep;
  rep.name = "pi-count";
  rep.parameters = {{"n", std::to_string(n)}};
  rep.columns = {"method", "pi"};
  if (method != PiCountMethod::Sieve)
    rep.rows.push_back({"formula", std::to_string(pi_from_formula(n, table))});
  if (method != PiCountMethod::Formula)
    rep.rows.push_back({"sieve", std::to_string(table.pi(n))});
  return rep;
}

// delta(n) rows for n = 2..nmax via one compensated prefix pass; identical
// summation order to delta(), so the rows match one-shot calls exactly.
inline ExperimentReport delta_report(i64 nmax, const PrimeTable& table) {
  if (nmax < 2) throw std::invalid_argument("delta-csv: nmax must be >= 2");
  if (table.limit() < static_cast<u64>(nmax))
    throw std::invalid_argument("delta-csv: table too small");
  ExperimentReport rep;
  rep.name = "delta-csv";
  rep.parameters = {{"nmax", std::to_string(nmax)}};
  rep.columns = {"n", "delta"};
  const RationalAngle half_pi(1, 2);
  const u64 k0 = k0_for_b(2);
  CompensatedSum acc;
  for (u64 k = 1; k <= static_cast<u64>(nmax); ++k) {
    acc.add(k <= k0 ? term_rational(k, half_pi) : term_rational_fast(k, half_pi, table, k0));
    if (k >= 2)
      rep.rows.push_back(
          {std::to_string(k), fmt_float(acc.value() - static_cast<double>(table.pi(k)))});
  }
  return rep;
}

inline ExperimentReport plan_report(u64 n) {
  const PrecisionPlan p = plan(n);
  ExperimentReport rep;
  rep.name = "precision-plan";
  rep.parameters = {{"n", std::to_string(n)}};
  rep.columns = {"k", "required_digits"};
  for (const auto& budget : p.per_term)
    rep.rows.push_back({std::to_string(budget.k), std::to_string(budget.required_decimal_digits)});
  rep.rows.push_back({"overall", std::to_string(p.overall_digits)});
  rep.summary = {{"overall_digits", std::to_string(p.overall_digits)},
                 {"guard_digits", std::to_string(kGuardDigits)}};
  return rep;
}

}  // namespace squine

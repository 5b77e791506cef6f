// squine — squared-sine prime counting series toolkit.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage/precondition,
// 3 precision error, 4 resource error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squine/cli_reports.hpp"
#include "squine/squine.hpp"

namespace {

using namespace squine;

struct OutputOpts {
  std::string format = "csv";
  std::string out;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "write output to this path instead of stdout");
}

void emit(const ExperimentReport& rep, const OutputOpts& opts) {
  const std::string text = opts.format == "json" ? to_json(rep) : to_csv(rep);
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output path " + opts.out);
  file << text;
}

void write_trace(const std::string& path, const SeriesResult& result) {
  Table t;
  t.columns = {"k", "term"};
  for (std::size_t i = 0; i < result.terms->size(); ++i)
    t.rows.push_back({std::to_string(i + 1), fmt_float((*result.terms)[i])});
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open trace path " + path);
  file << to_csv(t);
}

int cmd_pi_count(i64 n, const std::string& method, const OutputOpts& opts) {
  const PiCountMethod m = method == "formula" ? PiCountMethod::Formula
                        : method == "sieve"   ? PiCountMethod::Sieve
                                              : PiCountMethod::Both;
  const PrimeTable table = sieve(std::max<i64>(n, 2));
  const ExperimentReport rep = pi_count_report(n, m, table);
  emit(rep, opts);
  if (m == PiCountMethod::Both && rep.rows[0][1] != rep.rows[1][1]) {
    std::cerr << "error: formula and sieve disagree at n=" << n << "\n";
    return 1;
  }
  return 0;
}

struct SeriesArgs {
  i64 n = 0;
  std::string engine = "auto";
  i64 a = 0;
  i64 b = -1;
  std::string x_decimal;
  bool x_unit = false;
  u64 digits = 0;
  std::string trace_out;
};

int cmd_series(SeriesArgs args, const OutputOpts& opts) {
  const bool has_rational = args.b >= 0;
  const bool has_decimal = !args.x_decimal.empty();
  const int kinds = int(has_rational) + int(has_decimal) + int(args.x_unit);
  if (kinds != 1)
    throw std::invalid_argument("series: give exactly one of --a/--b, --x-decimal, --x-unit");
  if (args.engine == "auto") args.engine = has_rational ? "exact" : "bigfloat";
  if (args.engine != "bigfloat" && !has_rational)
    throw std::invalid_argument("series: engine '" + args.engine + "' needs a rational angle");
  if (has_rational && args.b == 0) throw std::invalid_argument("series: b must be >= 1");

  RealAngleSpec spec = RealAngleSpec::unit();
  if (has_rational)
    spec = RealAngleSpec::pi_rational(RationalAngle(args.a, static_cast<u64>(args.b)));
  else if (has_decimal)
    spec = RealAngleSpec::decimal(args.x_decimal, args.digits);

  const bool trace = !args.trace_out.empty();
  if (trace && args.engine == "both")
    throw std::invalid_argument("series: --trace-out needs a single engine");

  ExperimentReport rep;
  rep.name = "series";
  rep.parameters = {{"n", std::to_string(args.n)},
                    {"angle", spec.describe()},
                    {"engine", args.engine}};
  rep.columns = {"engine", "n", "angle", "value", "error_bound"};

  std::optional<SeriesResult> exact, real;
  if (args.engine == "exact" || args.engine == "both") {
    exact = s_rational(args.n, spec.angle, trace);
    rep.rows.push_back({"exact", std::to_string(args.n), spec.describe(), fmt_float(exact->value),
                        fmt_float(exact->error_bound)});
  }
  if (args.engine == "bigfloat" || args.engine == "both") {
    real = s_real(args.n, spec, 0, trace);
    rep.rows.push_back({"bigfloat", std::to_string(args.n), spec.describe(),
                        fmt_float(real->value), fmt_float(real->error_bound)});
  }

  int status = 0;
  if (args.engine == "both") {
    const double diff = std::fabs(exact->value - real->value);
    rep.summary = {{"cross_engine_diff", fmt_float(diff)}};
    if (diff > 1e-10) {
      std::cerr << "error: engines disagree by " << diff << "\n";
      status = 1;
    }
  }
  emit(rep, opts);
  if (trace) write_trace(args.trace_out, exact ? *exact : *real);
  return status;
}

int cmd_delta_csv(i64 nmax, const OutputOpts& opts) {
  const PrimeTable table = sieve(std::max<i64>(nmax, 2));
  emit(delta_report(nmax, table), opts);
  return 0;
}

int cmd_precision_plan(u64 n, const OutputOpts& opts) {
  emit(plan_report(n), opts);
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"squared-sine prime counting series toolkit"};
  app.require_subcommand(1);
  int status = 0;

  // pi-count
  i64 pc_n = 0;
  std::string pc_method = "both";
  OutputOpts pc_out;
  auto* pc = app.add_subcommand("pi-count", "prime count via the series floor identity");
  pc->add_option("--n", pc_n, "upper bound")->required();
  pc->add_option("--method", pc_method, "formula, sieve or both")
      ->check(CLI::IsMember({"formula", "sieve", "both"}))
      ->capture_default_str();
  add_output_opts(pc, pc_out);
  pc->callback([&] { status = cmd_pi_count(pc_n, pc_method, pc_out); });

  // series
  SeriesArgs se;
  OutputOpts se_out;
  auto* series = app.add_subcommand("series", "evaluate s(n, x)");
  series->add_option("--n", se.n, "number of terms")->required();
  series->add_option("--engine", se.engine,
                     "exact, bigfloat or both (default: exact for rational angles, else bigfloat)")
      ->check(CLI::IsMember({"exact", "bigfloat", "both"}));
  series->add_option("--a", se.a, "numerator of x = a*pi/b");
  series->add_option("--b", se.b, "denominator of x = a*pi/b");
  series->add_option("--x-decimal", se.x_decimal, "x as a plain decimal literal");
  series->add_flag("--x-unit", se.x_unit, "x = 1");
  series->add_option("--digits", se.digits, "stated significant digits of --x-decimal");
  series->add_option("--trace-out", se.trace_out, "write per-term CSV trace to this path");
  add_output_opts(series, se_out);
  series->callback([&] { status = cmd_series(se, se_out); });

  // delta-csv
  i64 dc_nmax = 50;
  OutputOpts dc_out;
  auto* dc = app.add_subcommand("delta-csv", "rows of s(n, pi/2) - Pi(n)");
  dc->add_option("--nmax", dc_nmax, "last n")->capture_default_str();
  add_output_opts(dc, dc_out);
  dc->callback([&] { status = cmd_delta_csv(dc_nmax, dc_out); });

  // precision-plan
  u64 pp_n = 0;
  OutputOpts pp_out;
  auto* pp = app.add_subcommand("precision-plan", "per-term and overall digit budgets");
  pp->add_option("--n", pp_n, "number of terms")->required();
  add_output_opts(pp, pp_out);
  pp->callback([&] { status = cmd_precision_plan(pp_n, pp_out); });

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  exp->require_subcommand(1);

  std::vector<u64> sw_bs;
  std::string sw_apolicy = "one";
  i64 sw_n = 1000000;
  OutputOpts sw_out;
  auto* sweep = exp->add_subcommand("rational-sweep", "measured vs predicted ratios");
  sweep->add_option("--bs", sw_bs, "denominators to sweep")->required()->delimiter(',');
  sweep->add_option("--a-policy", sw_apolicy, "one or all")
      ->check(CLI::IsMember({"one", "all"}))
      ->capture_default_str();
  sweep->add_option("--n", sw_n, "series length")->capture_default_str();
  add_output_opts(sweep, sw_out);
  sweep->callback([&] {
    const PrimeTable table = sieve(std::max<i64>(sw_n, 2));
    emit(rational_sweep(sw_bs, sw_apolicy == "one" ? SweepAPolicy::One : SweepAPolicy::AllCoprime,
                        sw_n, table),
         sw_out);
  });

  u64 ae_samples = 20;
  i64 ae_n = 500;
  u64 ae_seed = 7;
  u64 ae_digits = 0;
  std::string ae_xpolicy = "random";
  OutputOpts ae_out;
  auto* ae = exp->add_subcommand("ae-sample", "sampled s(n, x)/n ratios");
  ae->add_option("--samples", ae_samples, "sample count")->capture_default_str();
  ae->add_option("--n", ae_n, "series length")->capture_default_str();
  ae->add_option("--seed", ae_seed, "generator seed")->capture_default_str();
  ae->add_option("--x-policy", ae_xpolicy, "random or unit")
      ->check(CLI::IsMember({"random", "unit"}))
      ->capture_default_str();
  ae->add_option("--digits", ae_digits, "override the planned digit budget");
  add_output_opts(ae, ae_out);
  ae->callback([&] {
    emit(ae_sample(ae_samples, ae_n, ae_seed,
                   ae_xpolicy == "unit" ? SamplePolicy::Unit : SamplePolicy::RandomUniform,
                   ae_digits),
         ae_out);
  });

  u64 lac_kmax = 300;
  OutputOpts lac_out;
  auto* lac = exp->add_subcommand("lacunarity", "exact r(k+1) > 3 r(k) check");
  lac->add_option("--kmax", lac_kmax, "last index")->capture_default_str();
  add_output_opts(lac, lac_out);
  lac->callback([&] { emit(lacunarity_check(lac_kmax), lac_out); });

  u64 ca_n = 0;
  OutputOpts ca_out;
  auto* ca = exp->add_subcommand("cancellation", "signed quadruple solutions");
  ca->add_option("--n", ca_n, "index bound")->required();
  add_output_opts(ca, ca_out);
  ca->callback([&] { emit(cancellation_count(ca_n), ca_out); });

  u64 m4_n = 0;
  OutputOpts m4_out;
  auto* m4 = exp->add_subcommand("moment4", "exact fourth moment N(n)/256");
  m4->add_option("--n", m4_n, "index bound")->required();
  add_output_opts(m4, m4_out);
  m4->callback([&] {
    const QuadrupleCount c = count_cancellations(m4_n);
    BigRational moment = make_rational(BigInt(static_cast<unsigned long>(c.solutions)), BigInt(256));
    BigRational c_n2 = moment / BigRational(static_cast<unsigned long>(m4_n * m4_n));
    c_n2.canonicalize();
    ExperimentReport rep;
    rep.name = "moment4";
    rep.parameters = {{"n", std::to_string(m4_n)}};
    rep.columns = {"n", "n_solutions", "moment", "moment_decimal", "moment_over_n2"};
    rep.rows.push_back({std::to_string(m4_n), std::to_string(c.solutions), fmt_rational(moment),
                        fmt_float(moment.get_d()), fmt_float(c_n2.get_d())});
    rep.summary = {{"structural_violations", std::to_string(c.structural_violations)}};
    emit(rep, m4_out);
  });

  double we_x0 = 1.0;
  double we_eps = 0.1;
  u64 we_bmax = 1000;
  OutputOpts we_out;
  auto* we = exp->add_subcommand("weps-demo", "rational angle inside the W(eps) window");
  we->add_option("--x0", we_x0, "target point")->capture_default_str();
  we->add_option("--eps", we_eps, "window half-width")->capture_default_str();
  we->add_option("--bmax", we_bmax, "denominator search bound")->capture_default_str();
  add_output_opts(we, we_out);
  we->callback([&] { emit(weps_demo(we_x0, we_eps, we_bmax), we_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return status;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const squine::precision_error& e) {
    std::cerr << "error: " << e.what() << " (minimal sufficient digits: " << e.required_digits
              << ")\n";
    return 3;
  } catch (const squine::ambiguous_floor_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const squine::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const squine::not_found_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const squine::not_invertible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

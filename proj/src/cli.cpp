#include "bcfit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcfit/curves.hpp"
#include "bcfit/errors.hpp"
#include "bcfit/pipeline.hpp"
#include "bcfit/report_io.hpp"
#include "bcfit/svg_chart.hpp"

namespace bcfit::cli {

namespace {

// Table 1 (left) estimates, used as the default synthetic truth.
constexpr BcParams kDefaultTruth{4.9129, 0.0772, 0.9300, 12.7469, -0.0209};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  return out;
}

BcParams parse_params(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 5) throw InputError("expected five comma-separated parameters b,c,d,e,f");
  BcParams p{v[0], v[1], v[2], v[3], v[4]};
  if (!p.valid()) throw InputError("parameters must be finite with e > 0: '" + text + "'");
  return p;
}

TenorGrid parse_grid(const std::string& text) { return TenorGrid(parse_list(text)); }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  auto out = open_output(path);
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

struct SpreadsArgs {
  std::string issuer;
  std::string reference;
  std::string orientation = "issuer-minus-reference";
  std::string out;
};

struct FitArgs {
  std::string spreads;
  std::string out;
  std::uint64_t seed = 0;
  int max_restarts = RestartPolicy{}.max_restarts;
  std::vector<double> restart_interval;
  std::string restart_mode = "first";
  bool no_restarts = false;
  int max_iter = FitConfig{}.max_iterations;
  double rss_tol = FitConfig{}.rss_rel_tol;
  double grad_tol = FitConfig{}.grad_tol;
  std::string grid;
};

struct SimulateArgs {
  std::uint64_t seed = 0;
  std::size_t days = 258;
  double noise = 0.0;
  std::string truth;
  std::vector<std::string> shifts;
  std::string drift_to;
  std::string grid;
  std::string start_date = "2011-06-01";
  std::string out;
  std::string truth_out;
};

struct PlotArgs {
  std::string spreads;
  std::string report;
  std::string params;
  std::string date;
  std::string out;
};

int cmd_spreads(const SpreadsArgs& args, std::ostream& err) {
  const auto orientation = parse_orientation(args.orientation);
  const auto issuer = read_curve_file(args.issuer, CurveKind::issuer);
  const auto reference = read_curve_file(args.reference, CurveKind::reference);
  const auto aligned = align_panels(issuer, reference);
  err << "spread orientation: " << to_string(orientation) << '\n';
  for (const auto& d : aligned.dropped_issuer) {
    err << "dropped " << format_date(d) << ": no reference quote\n";
  }
  for (const auto& d : aligned.dropped_reference) {
    err << "dropped " << format_date(d) << ": no issuer quote\n";
  }
  const auto spreads = spread_panel(aligned, orientation);
  auto out = open_output(args.out);
  write_curve_csv(out, spreads);
  err << "wrote " << spreads.size() << " spread curves to " << args.out << '\n';
  return kSuccess;
}

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
  RestartPolicy policy;
  policy.seed = args.seed;
  policy.max_restarts = args.max_restarts;
  policy.mode = parse_restart_mode(args.restart_mode);
  policy.restarts_enabled = !args.no_restarts;
  if (!args.restart_interval.empty()) {
    policy.interval_low = args.restart_interval[0];
    policy.interval_high = args.restart_interval[1];
  }
  FitConfig config;
  config.max_iterations = args.max_iter;
  config.rss_rel_tol = args.rss_tol;
  config.grad_tol = args.grad_tol;
  policy.validate();
  config.validate();

  auto panel = read_curve_file(args.spreads, CurveKind::spread);
  if (!args.grid.empty()) panel = select_tenors(panel, parse_grid(args.grid));
  if (panel.empty()) throw EmptyDataError("empty panel");

  const auto report = run_panel(panel, policy, config);
  for (const auto& entry : report.per_day) {
    if (!entry.error.empty()) err << format_date(entry.date) << ": " << entry.error << '\n';
  }
  auto file = open_output(args.out);
  write_report_csv(file, report);

  const auto summary = summarize(report);
  out << "converged " << summary.converged_days << " out of " << summary.total_days << " days\n";
  out << "converged from previous day's estimates: " << summary.warm_only_converged << '\n';
  out << "random draws per day:";
  for (const auto& [draws, count] : summary.restart_histogram) out << ' ' << draws << ':' << count;
  out << '\n';
  if (summary.parameter_stats) {
    for (std::size_t k = 0; k < 5; ++k) {
      const auto& s = (*summary.parameter_stats)[k];
      out << BcParams::names[k] << ": mean " << format_number(s.mean) << " min "
          << format_number(s.min) << " max " << format_number(s.max) << '\n';
    }
  }
  return kSuccess;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& err) {
  SyntheticSpec spec;
  spec.seed = args.seed;
  spec.noise_sigma = args.noise;
  if (!args.grid.empty()) spec.grid = parse_grid(args.grid);
  spec.start_date = parse_date(args.start_date);
  if (args.days == 0) throw InputError("--days must be positive");

  const BcParams initial = args.truth.empty() ? kDefaultTruth : parse_params(args.truth);
  if (!args.drift_to.empty()) {
    if (!args.shifts.empty()) throw InputError("--drift-to and --shift are mutually exclusive");
    spec.truth_path = drift_path(initial, parse_params(args.drift_to), args.days);
  } else {
    std::vector<RegimeShift> shifts;
    for (const auto& s : args.shifts) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw InputError("--shift expects DAY:b,c,d,e,f");
      const double day = parse_number(s.substr(0, colon));
      if (day < 0 || day != static_cast<double>(static_cast<std::size_t>(day))) {
        throw InputError("--shift day must be a non-negative integer");
      }
      shifts.push_back({static_cast<std::size_t>(day), parse_params(s.substr(colon + 1))});
    }
    spec.truth_path = regime_path(initial, shifts, args.days);
  }

  const auto synthetic = generate_synthetic(spec);
  {
    auto file = open_output(args.out);
    write_curve_csv(file, synthetic.panel);
  }
  {
    auto file = open_output(args.truth_out);
    write_truth_csv(file, synthetic.truth);
  }
  err << "wrote " << synthetic.panel.size() << " synthetic days to " << args.out << '\n';
  return kSuccess;
}

int cmd_plot(const PlotArgs& args, std::ostream& err) {
  const auto date = parse_date(args.date);
  const auto panel = read_curve_file(args.spreads, CurveKind::spread);
  const auto& day = panel.at(date);

  std::optional<BcParams> fit;
  if (!args.params.empty()) {
    fit = parse_params(args.params);
  } else {
    std::ifstream in(args.report);
    if (!in) throw InputError("cannot open '" + args.report + "'");
    std::vector<ReportRow> rows;
    try {
      rows = parse_report_csv(in);
    } catch (const ParseError& e) {
      throw InputError(args.report + ": " + e.what());
    }
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const ReportRow& r) { return r.date == date; });
    if (it == rows.end()) throw LookupError("no report row for " + args.date);
    if (it->converged && it->params) {
      fit = it->params;
    } else {
      err << "warning: " << args.date << " did not converge; plotting quotes only\n";
    }
  }
  write_file(args.out, render_fit_svg(day, fit));
  return kSuccess;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Brain-Cousens term-structure fitting for credit spread curves"};
  app.require_subcommand(1);

  SpreadsArgs spreads_args;
  auto* spreads = app.add_subcommand("spreads", "Difference issuer and reference curves");
  spreads->add_option("--issuer", spreads_args.issuer, "Issuer curve CSV")->required();
  spreads->add_option("--reference", spreads_args.reference, "Reference curve CSV")->required();
  spreads->add_option("--orientation", spreads_args.orientation, "Spread sign convention")
      ->check(CLI::IsMember({"issuer-minus-reference", "reference-minus-issuer"}));
  spreads->add_option("--out", spreads_args.out, "Output spread CSV")->required();

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit every day of a spread panel");
  fit->add_option("--spreads", fit_args.spreads, "Spread CSV")->required();
  fit->add_option("--seed", fit_args.seed, "Random restart seed")->required();
  fit->add_option("--max-restarts", fit_args.max_restarts, "Random draws per day");
  fit->add_option("--restart-interval", fit_args.restart_interval, "LO HI")->expected(2);
  fit->add_option("--restart-mode", fit_args.restart_mode, "first|best")
      ->check(CLI::IsMember({"first", "best"}));
  fit->add_flag("--no-restarts", fit_args.no_restarts, "Only warm starts (one draw on cold days)");
  fit->add_option("--max-iter", fit_args.max_iter, "Solver iteration cap");
  fit->add_option("--rss-tol", fit_args.rss_tol, "Relative RSS change tolerance");
  fit->add_option("--grad-tol", fit_args.grad_tol, "Gradient max-norm tolerance");
  fit->add_option("--grid", fit_args.grid, "Comma-separated tenors to fit");
  fit->add_option("--out", fit_args.out, "Output report CSV")->required();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic spread panel");
  simulate->add_option("--seed", sim_args.seed, "Noise seed")->required();
  simulate->add_option("--days", sim_args.days, "Number of business days");
  simulate->add_option("--noise", sim_args.noise, "Noise standard deviation");
  simulate->add_option("--truth", sim_args.truth, "Initial parameters b,c,d,e,f");
  simulate->add_option("--shift", sim_args.shifts, "Regime shift DAY:b,c,d,e,f (repeatable)");
  simulate->add_option("--drift-to", sim_args.drift_to, "Final parameters of a linear drift");
  simulate->add_option("--grid", sim_args.grid, "Comma-separated tenors");
  simulate->add_option("--start-date", sim_args.start_date, "First date (YYYY-MM-DD)");
  simulate->add_option("--out", sim_args.out, "Output spread CSV")->required();
  simulate->add_option("--truth-out", sim_args.truth_out, "Output truth CSV")->required();

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render one day's quotes and fitted curve as SVG");
  plot->add_option("--spreads", plot_args.spreads, "Spread CSV")->required();
  auto* report_opt = plot->add_option("--report", plot_args.report, "Report CSV from fit");
  auto* params_opt = plot->add_option("--params", plot_args.params, "Fitted b,c,d,e,f");
  report_opt->excludes(params_opt);
  plot->add_option("--date", plot_args.date, "Date to plot (YYYY-MM-DD)")->required();
  plot->add_option("--out", plot_args.out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*spreads) return cmd_spreads(spreads_args, err);
    if (*fit) return cmd_fit(fit_args, out, err);
    if (*simulate) return cmd_simulate(sim_args, err);
    if (*plot) {
      if (plot_args.report.empty() && plot_args.params.empty()) {
        throw InputError("plot needs --report or --params");
      }
      return cmd_plot(plot_args, err);
    }
  } catch (const EmptyDataError& e) {
    err << "error: " << e.what() << '\n';
    return kEmptyData;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kLookupFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace bcfit::cli

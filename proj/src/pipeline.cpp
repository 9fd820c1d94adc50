#include "bcfit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcfit/errors.hpp"
#include "bcfit/rng.hpp"

namespace bcfit {

namespace {

bool same_fit(const FitResult& a, const FitResult& b) {
  return a.params == b.params && a.rss == b.rss && a.iterations == b.iterations &&
         a.converged == b.converged && a.termination == b.termination &&
         a.std_errors == b.std_errors;
}

}  // namespace

PanelReport run_panel(const CurvePanel& spreads, const RestartPolicy& policy,
                      const FitConfig& config) {
  if (spreads.empty()) throw EmptyDataError("empty panel");
  if (spreads.kind() != CurveKind::spread) throw InputError("run_panel requires a spread panel");
  policy.validate();
  config.validate();

  PanelReport report;
  std::optional<BcParams> warm;
  for (const auto& day : spreads.days()) {
    DayOutcome entry{day.date(), std::nullopt, {}};
    try {
      entry.outcome = fit_with_restarts(day, warm, policy, config);
    } catch (const std::exception& err) {
      entry.error = err.what();
    }
    ++report.total_days;
    if (entry.converged()) {
      const auto& outcome = *entry.outcome;
      ++report.converged_days;
      if (outcome.source == StartSource::warm) ++report.warm_only_converged;
      report.parameter_series.push_back({day.date(), outcome.result.params});
      warm = outcome.result.params;
    }
    report.per_day.push_back(std::move(entry));
  }
  return report;
}

std::vector<std::string> replay_report(const PanelReport& report, const CurvePanel& spreads,
                                       const RestartPolicy& policy, const FitConfig& config) {
  std::vector<std::string> problems;
  auto complain = [&](const Date& date, const std::string& what) {
    problems.push_back(format_date(date) + ": " + what);
  };
  if (report.per_day.size() != spreads.size()) {
    problems.push_back("report covers " + std::to_string(report.per_day.size()) +
                       " days, panel has " + std::to_string(spreads.size()));
    return problems;
  }

  std::optional<BcParams> last_converged;
  for (std::size_t i = 0; i < report.per_day.size(); ++i) {
    const auto& entry = report.per_day[i];
    const auto& day = spreads.days()[i];
    if (entry.date != day.date()) {
      complain(entry.date, "date does not match panel day " + format_date(day.date()));
      continue;
    }
    if (!entry.outcome) continue;
    const auto& out = *entry.outcome;

    if (out.warm_attempted != last_converged.has_value()) {
      complain(day.date(), "warm attempt recorded inconsistently with the chain");
    }
    if (out.source == StartSource::warm && out.result.converged) {
      if (!last_converged || !(out.start == *last_converged)) {
        complain(day.date(), "warm start differs from the most recent converged estimates");
      } else if (!same_fit(fit_day(day, out.start, config), out.result)) {
        complain(day.date(), "warm fit does not reproduce");
      }
      if (out.draws_used != 0) complain(day.date(), "warm day consumed random draws");
    }
    if (out.source == StartSource::random) {
      RandomStream rng = RandomStream::for_date(policy.seed, day.date());
      for (int k = 1; k <= out.random_index; ++k) {
        const BcParams start = random_start(policy, rng);
        const FitResult fit = fit_day(day, start, config);
        if (k < out.random_index && fit.converged && policy.mode == RestartMode::first) {
          complain(day.date(), "draw " + std::to_string(k) + " converged before the recorded one");
        }
        if (k == out.random_index && (!(start == out.start) || !same_fit(fit, out.result))) {
          complain(day.date(), "draw " + std::to_string(k) + " does not reproduce the recorded fit");
        }
      }
    }
    if (out.result.converged) last_converged = out.result.params;
  }
  return problems;
}

void SyntheticSpec::validate() const {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw InputError("noise sigma must be finite and non-negative");
  }
  if (truth_path.empty()) throw InputError("synthetic panel needs at least one day");
  for (const auto& p : truth_path) {
    if (!p.valid()) throw InputError("invalid truth parameters in synthetic path");
  }
  if (!start_date.ok()) throw InputError("invalid start date");
}

std::vector<Date> business_days(const Date& start, std::size_t count) {
  using namespace std::chrono;
  std::vector<Date> dates;
  dates.reserve(count);
  sys_days day{start};
  while (dates.size() < count) {
    const weekday wd{day};
    if (wd != Saturday && wd != Sunday) dates.emplace_back(day);
    day += days{1};
  }
  return dates;
}

SyntheticPanel generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const auto dates = business_days(spec.start_date, spec.truth_path.size());
  std::vector<CurveDay> days;
  std::vector<TruthRow> truth;
  days.reserve(dates.size());
  truth.reserve(dates.size());
  for (std::size_t i = 0; i < dates.size(); ++i) {
    const auto& p = spec.truth_path[i];
    RandomStream rng = RandomStream::for_date(spec.seed, dates[i]);
    std::vector<double> values(spec.grid.size());
    for (std::size_t j = 0; j < spec.grid.size(); ++j) {
      values[j] = evaluate(p, spec.grid[j]);
      if (spec.noise_sigma > 0.0) values[j] += spec.noise_sigma * rng.normal();
    }
    days.emplace_back(dates[i], spec.grid, std::move(values), CurveKind::spread);
    truth.push_back({dates[i], p, spec.noise_sigma});
  }
  return {CurvePanel(CurveKind::spread, std::move(days)), std::move(truth)};
}

std::vector<BcParams> constant_path(const BcParams& p, std::size_t n_days) {
  return std::vector<BcParams>(n_days, p);
}

std::vector<BcParams> drift_path(const BcParams& from, const BcParams& to, std::size_t n_days) {
  std::vector<BcParams> path;
  path.reserve(n_days);
  const auto a = from.to_array();
  const auto b = to.to_array();
  for (std::size_t i = 0; i < n_days; ++i) {
    const double t = n_days > 1 ? static_cast<double>(i) / static_cast<double>(n_days - 1) : 0.0;
    std::array<double, 5> v{};
    for (std::size_t k = 0; k < 5; ++k) v[k] = a[k] + t * (b[k] - a[k]);
    path.push_back(BcParams::from_array(v));
  }
  return path;
}

std::vector<BcParams> regime_path(const BcParams& initial, const std::vector<RegimeShift>& shifts,
                                  std::size_t n_days) {
  auto ordered = shifts;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RegimeShift& a, const RegimeShift& b) { return a.day < b.day; });
  std::vector<BcParams> path;
  path.reserve(n_days);
  BcParams current = initial;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n_days; ++i) {
    while (next < ordered.size() && ordered[next].day <= i) current = ordered[next++].params;
    path.push_back(current);
  }
  return path;
}

PanelSummary summarize(const PanelReport& report) {
  PanelSummary summary;
  summary.converged_days = report.converged_days;
  summary.total_days = report.total_days;
  summary.warm_only_converged = report.warm_only_converged;
  summary.converged_fraction =
      report.total_days > 0 ? static_cast<double>(report.converged_days) / report.total_days : 0.0;

  for (const auto& entry : report.per_day) {
    if (entry.outcome) ++summary.restart_histogram[entry.outcome->draws_used];
  }

  if (!report.parameter_series.empty()) {
    std::array<ParameterStats, 5> stats{};
    for (auto& s : stats) {
      s = {0.0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    }
    for (const auto& point : report.parameter_series) {
      const auto v = point.params.to_array();
      for (std::size_t k = 0; k < 5; ++k) {
        stats[k].mean += v[k];
        stats[k].min = std::min(stats[k].min, v[k]);
        stats[k].max = std::max(stats[k].max, v[k]);
      }
    }
    for (auto& s : stats) s.mean /= static_cast<double>(report.parameter_series.size());
    summary.parameter_stats = stats;
  }
  return summary;
}

}  // namespace bcfit

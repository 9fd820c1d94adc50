#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcfit/bc_model.hpp"
#include "bcfit/curves.hpp"
#include "bcfit/nls_solver.hpp"
#include "bcfit/starting_values.hpp"

namespace bcfit {

struct DayOutcome {
  Date date;
  /// Empty when the day could not be fitted at all; see `error`.
  std::optional<StartOutcome> outcome;
  std::string error;

  bool converged() const { return outcome && outcome->result.converged; }
};

struct SeriesPoint {
  Date date;
  BcParams params;
};

struct PanelReport {
  std::vector<DayOutcome> per_day;
  int converged_days = 0;
  int total_days = 0;
  /// Days that converged from the previous day's estimates without any random draw.
  int warm_only_converged = 0;
  /// Converged days only, in date order.
  std::vector<SeriesPoint> parameter_series;
};

/// Fits every day in order. Each day after the first is warm-started from the
/// most recent converged day's estimates; a day with no converged predecessor
/// starts from random draws only. Throws EmptyDataError on an empty panel.
PanelReport run_panel(const CurvePanel& spreads, const RestartPolicy& policy,
                      const FitConfig& config = {});

/// Re-derives every outcome in `report` from the panel, policy and config:
/// warm starts must equal the previous converged estimates, random(k) days
/// must reproduce from the k-th seeded draw with draws 1..k-1 failing.
/// Returns one message per discrepancy; empty means the report replays.
std::vector<std::string> replay_report(const PanelReport& report, const CurvePanel& spreads,
                                       const RestartPolicy& policy, const FitConfig& config = {});

struct SyntheticSpec {
  /// True parameters, one entry per day.
  std::vector<BcParams> truth_path;
  double noise_sigma = 0.0;
  TenorGrid grid = TenorGrid::standard();
  std::uint64_t seed = 0;
  /// First business day of the panel; later dates skip weekends.
  Date start_date{std::chrono::year{2011}, std::chrono::month{6}, std::chrono::day{1}};

  void validate() const;
};

struct TruthRow {
  Date date;
  BcParams params;
  double noise_sigma;
};

struct SyntheticPanel {
  CurvePanel panel;
  std::vector<TruthRow> truth;
};

/// values = model(truth) + N(0, noise_sigma^2) noise drawn from a per-day child stream.
SyntheticPanel generate_synthetic(const SyntheticSpec& spec);

std::vector<BcParams> constant_path(const BcParams& p, std::size_t n_days);
/// Linear interpolation from `from` on day 0 to `to` on the last day.
std::vector<BcParams> drift_path(const BcParams& from, const BcParams& to, std::size_t n_days);

struct RegimeShift {
  std::size_t day;  // 0-based first day of the new regime
  BcParams params;
};

/// Piecewise constant path: `initial` until the first shift, and so on.
std::vector<BcParams> regime_path(const BcParams& initial, const std::vector<RegimeShift>& shifts,
                                  std::size_t n_days);

/// `count` consecutive Monday-to-Friday dates starting at (or after) `start`.
std::vector<Date> business_days(const Date& start, std::size_t count);

struct ParameterStats {
  double mean;
  double min;
  double max;
};

struct PanelSummary {
  int converged_days = 0;
  int total_days = 0;
  double converged_fraction = 0.0;
  int warm_only_converged = 0;
  /// draws_used -> number of fitted days (0 = converged from the warm start).
  std::map<int, int> restart_histogram;
  /// Empty when no day converged.
  std::optional<std::array<ParameterStats, 5>> parameter_stats;
};

PanelSummary summarize(const PanelReport& report);

}  // namespace bcfit

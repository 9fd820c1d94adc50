#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "bcfit/bc_model.hpp"
#include "bcfit/curves.hpp"
#include "bcfit/nls_solver.hpp"
#include "bcfit/rng.hpp"

namespace bcfit {

enum class RestartMode {
  first,  // stop at the first converged draw
  best,   // fit every draw, keep the converged one with the lowest RSS
};

std::string_view to_string(RestartMode mode);
RestartMode parse_restart_mode(std::string_view text);

/// Uniform random restarts. The e component is redrawn from the same interval
/// until it is positive, so with the default [-2, 2] it is uniform on (0, 2).
struct RestartPolicy {
  double interval_low = -2.0;
  double interval_high = 2.0;
  int max_restarts = 50;
  std::uint64_t seed = 0;
  RestartMode mode = RestartMode::first;
  /// When false a day gets a single attempt: the warm start if there is one,
  /// otherwise one random draw.
  bool restarts_enabled = true;

  void validate() const;
};

/// Redraw cap for the e component.
inline constexpr int kMaxPositiveRedraws = 1000;

/// Draws b, c, d, e, f in that order from the policy interval.
BcParams random_start(const RestartPolicy& policy, RandomStream& rng);

enum class StartSource { warm, random };

struct StartOutcome {
  FitResult result;
  StartSource source = StartSource::warm;
  /// Index of the random draw that produced `result` (1-based); 0 for warm.
  int random_index = 0;
  /// Random starting points consumed on this day.
  int draws_used = 0;
  /// Starting point the returned fit was run from.
  BcParams start;
  bool warm_attempted = false;
  bool warm_converged = false;
};

/// Warm start first, then seeded random restarts from the day's own stream
/// (RandomStream::for_date(policy.seed, day.date())). If nothing converges the
/// lowest-RSS attempt is returned with converged == false.
StartOutcome fit_with_restarts(const CurveDay& day, const std::optional<BcParams>& warm,
                               const RestartPolicy& policy, const FitConfig& config = {});

}  // namespace bcfit

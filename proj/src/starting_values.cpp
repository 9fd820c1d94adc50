#include "bcfit/starting_values.hpp"

#include <cmath>

#include "bcfit/errors.hpp"

namespace bcfit {

std::string_view to_string(RestartMode mode) {
  return mode == RestartMode::first ? "first" : "best";
}

RestartMode parse_restart_mode(std::string_view text) {
  if (text == "first") return RestartMode::first;
  if (text == "best") return RestartMode::best;
  throw InputError("unknown restart mode '" + std::string(text) + "'");
}

void RestartPolicy::validate() const {
  if (!std::isfinite(interval_low) || !std::isfinite(interval_high) ||
      !(interval_low < interval_high)) {
    throw InputError("restart interval must satisfy low < high");
  }
  if (max_restarts < 1) throw InputError("max_restarts must be at least 1");
}

BcParams random_start(const RestartPolicy& policy, RandomStream& rng) {
  policy.validate();
  const double lo = policy.interval_low;
  const double hi = policy.interval_high;
  BcParams p;
  p.b = rng.uniform(lo, hi);
  p.c = rng.uniform(lo, hi);
  p.d = rng.uniform(lo, hi);
  p.e = rng.uniform(lo, hi);
  for (int redraw = 0; !(p.e > 0.0); ++redraw) {
    if (redraw == kMaxPositiveRedraws) throw DomainError("cannot draw positive e");
    p.e = rng.uniform(lo, hi);
  }
  p.f = rng.uniform(lo, hi);
  return p;
}

namespace {

bool better(const FitResult& candidate, const FitResult& incumbent) {
  if (!std::isfinite(incumbent.rss)) return std::isfinite(candidate.rss);
  return candidate.rss < incumbent.rss;
}

}  // namespace

StartOutcome fit_with_restarts(const CurveDay& day, const std::optional<BcParams>& warm,
                               const RestartPolicy& policy, const FitConfig& config) {
  policy.validate();

  std::optional<StartOutcome> best_converged;
  std::optional<StartOutcome> best_any;
  auto consider = [&](const StartOutcome& attempt) {
    if (!best_any || better(attempt.result, best_any->result)) best_any = attempt;
    if (attempt.result.converged &&
        (!best_converged || better(attempt.result, best_converged->result))) {
      best_converged = attempt;
    }
  };

  bool warm_attempted = false;
  bool warm_converged = false;
  if (warm) {
    StartOutcome attempt;
    attempt.result = fit_day(day, *warm, config);
    attempt.source = StartSource::warm;
    attempt.start = *warm;
    warm_attempted = true;
    warm_converged = attempt.result.converged;
    if (warm_converged) {
      attempt.warm_attempted = true;
      attempt.warm_converged = true;
      return attempt;
    }
    consider(attempt);
  }

  int budget = policy.max_restarts;
  if (!policy.restarts_enabled) budget = warm ? 0 : 1;

  int draws = 0;
  if (budget > 0) {
    RandomStream rng = RandomStream::for_date(policy.seed, day.date());
    for (int k = 1; k <= budget; ++k) {
      StartOutcome attempt;
      attempt.start = random_start(policy, rng);
      draws = k;
      attempt.result = fit_day(day, attempt.start, config);
      attempt.source = StartSource::random;
      attempt.random_index = k;
      consider(attempt);
      if (attempt.result.converged && policy.mode == RestartMode::first) break;
    }
  }

  StartOutcome out = best_converged ? *best_converged : *best_any;
  out.draws_used = draws;
  out.warm_attempted = warm_attempted;
  out.warm_converged = warm_converged;
  return out;
}

}  // namespace bcfit

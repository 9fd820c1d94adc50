#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "bcfit/bc_model.hpp"
#include "bcfit/curves.hpp"

namespace bcfit {

struct FitConfig {
  /// Cap on accepted (Jacobian-evaluating) iterations; rejected trial steps are not counted.
  int max_iterations = 200;
  double rss_rel_tol = 1e-12;
  double grad_tol = 1e-10;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.1;
  /// Relative step floor: a rejected step with |dp| <= step_floor * (1 + |p|) ends the fit.
  double step_floor = 1e-15;
  /// Consecutive proposals with e <= 0 before giving up.
  int max_domain_rejections = 50;

  /// Throws InputError when a tolerance or damping factor is out of range.
  void validate() const;
};

enum class Termination { rss_tol, grad_tol, max_iter, step_floor, domain_violation };

std::string_view to_string(Termination t);

struct FitResult {
  BcParams params;
  /// Absent only when the normal equations were singular at the final iterate.
  std::optional<std::array<double, 5>> std_errors;
  double rss = 0.0;
  double sigma2_hat = 0.0;
  /// max |J^T r| at params.
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::max_iter;
};

/// Minimum number of quotes needed to leave one residual degree of freedom.
inline constexpr std::size_t kMinObservations = 6;

double rss(const BcParams& p, const CurveDay& day);

/// sqrt(diag(sigma2_hat (J^T J)^-1)) with sigma2_hat = rss / (n_obs - 5).
/// Zero RSS yields zero errors. Throws NonIdentifiableError on a rank-deficient J.
std::array<double, 5> standard_errors(const JacobianMatrix& jac, double rss, std::size_t n_obs);

/// Levenberg-Marquardt fit of one spread curve from the given start.
/// Deterministic in (day, start, config).
FitResult fit_day(const CurveDay& day, const BcParams& start, const FitConfig& config = {});

}  // namespace bcfit

#include "bcfit/nls_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "bcfit/errors.hpp"

namespace bcfit {

namespace {

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;

// Singular values of the column-normalised Jacobian below this fraction of
// the largest one count as rank deficiency.
constexpr double kRankTolerance = 1e-10;

constexpr double kLambdaMin = 1e-16;

Vector5 to_vector(const BcParams& p) { return Vector5(p.b, p.c, p.d, p.e, p.f); }

BcParams to_params(const Vector5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

// Residuals (observed minus model) as an Eigen vector; NaN-filled when the
// parameters leave the model domain.
Eigen::VectorXd residual_vector(const BcParams& p, const CurveDay& day) {
  const auto r = residuals(p, day);
  return Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

}  // namespace

void FitConfig::validate() const {
  if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
  if (!(rss_rel_tol > 0.0) || !(grad_tol > 0.0) || !(step_floor > 0.0) || !(lambda_init > 0.0)) {
    throw InputError("solver tolerances must be positive");
  }
  if (!(lambda_up > 1.0) || !(lambda_down > 0.0 && lambda_down < 1.0)) {
    throw InputError("damping factors must satisfy lambda_up > 1 > lambda_down > 0");
  }
  if (max_domain_rejections < 1) throw InputError("max_domain_rejections must be at least 1");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::rss_tol: return "rss-tol";
    case Termination::grad_tol: return "grad-tol";
    case Termination::max_iter: return "max-iter";
    case Termination::step_floor: return "step-floor";
    case Termination::domain_violation: return "domain-violation";
  }
  return "unknown";
}

double rss(const BcParams& p, const CurveDay& day) {
  double sum = 0.0;
  for (double r : residuals(p, day)) sum += r * r;
  return sum;
}

std::array<double, 5> standard_errors(const JacobianMatrix& jac, double rss, std::size_t n_obs) {
  if (n_obs <= 5) throw InputError("standard errors need more than 5 observations");
  if (static_cast<std::size_t>(jac.rows()) != n_obs) {
    throw InputError("jacobian rows do not match observation count");
  }
  if (!(rss >= 0.0) || !std::isfinite(rss)) throw InputError("rss must be finite and non-negative");

  const double sigma2 = rss / static_cast<double>(n_obs - 5);
  std::array<double, 5> se{};
  if (sigma2 == 0.0) return se;

  Vector5 scale = jac.colwise().norm().transpose();
  if ((scale.array() == 0.0).any() || !scale.allFinite()) throw NonIdentifiableError();
  const JacobianMatrix scaled = jac * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<JacobianMatrix> svd(scaled, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.minCoeff() <= kRankTolerance * sv.maxCoeff()) throw NonIdentifiableError();

  // (J^T J)^-1 = S^-1 V diag(sv^-2) V^T S^-1
  const Matrix5& v = svd.matrixV();
  const Vector5 inv_sv2 = sv.array().square().inverse();
  for (int k = 0; k < 5; ++k) {
    const double diag = (v.row(k).transpose().array().square() * inv_sv2.array()).sum();
    se[static_cast<std::size_t>(k)] = std::sqrt(sigma2 * diag) / scale[k];
  }
  return se;
}

FitResult fit_day(const CurveDay& day, const BcParams& start, const FitConfig& config) {
  config.validate();
  if (day.kind() != CurveKind::spread) throw InputError("fit requires a spread curve");
  const std::size_t n_obs = day.grid().size();
  if (n_obs < kMinObservations) {
    throw InputError("insufficient observations: " + std::to_string(n_obs) + " < " +
                     std::to_string(kMinObservations));
  }
  start.validate();

  FitResult result;
  Vector5 p = to_vector(start);
  Eigen::VectorXd r = residual_vector(start, day);
  double current_rss = r.squaredNorm();
  double lambda = config.lambda_init;
  int domain_rejections = 0;
  bool done = false;

  while (!done) {
    const JacobianMatrix jac = jacobian(to_params(p), day.grid());
    const Vector5 g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() <= config.grad_tol) {
      result.termination = Termination::grad_tol;
      result.converged = true;
      break;
    }
    if (result.iterations >= config.max_iterations) {
      result.termination = Termination::max_iter;
      break;
    }
    ++result.iterations;

    const Matrix5 normal = jac.transpose() * jac;
    Vector5 damping = normal.diagonal();
    const double floor = std::max(damping.maxCoeff(), 1.0) * std::numeric_limits<double>::epsilon();
    damping = damping.cwiseMax(floor);

    // Raise the damping until a step does not increase the RSS. Each pass of
    // this loop is one trial step; only accepted steps count as iterations.
    while (true) {
      Matrix5 system = normal;
      system.diagonal() += lambda * damping;
      Eigen::LLT<Matrix5> llt(system);
      Vector5 step = Vector5::Zero();
      if (llt.info() == Eigen::Success) step = llt.solve(g);
      if (llt.info() != Eigen::Success || !step.allFinite()) {
        lambda *= config.lambda_up;
        continue;
      }

      const Vector5 candidate = p + step;
      const BcParams trial = to_params(candidate);
      if (!trial.valid()) {
        lambda *= config.lambda_up;
        if (++domain_rejections >= config.max_domain_rejections) {
          result.termination = Termination::domain_violation;
          done = true;
          break;
        }
        continue;
      }
      domain_rejections = 0;

      Eigen::VectorXd trial_r = residual_vector(trial, day);
      const double trial_rss = trial_r.squaredNorm();
      const double change = std::abs(current_rss - trial_rss) / current_rss;
      if (std::isfinite(trial_rss) && trial_rss <= current_rss) {
        p = candidate;
        r = std::move(trial_r);
        current_rss = trial_rss;
        lambda = std::max(lambda * config.lambda_down, kLambdaMin);
        if (change < config.rss_rel_tol) {
          result.termination = Termination::rss_tol;
          result.converged = true;
          done = true;
        }
        break;
      }
      // A rejected step that moves the RSS by less than the tolerance means
      // the objective is flat to working precision here: stop without moving.
      if (std::isfinite(trial_rss) && change < config.rss_rel_tol) {
        result.termination = Termination::rss_tol;
        result.converged = true;
        done = true;
        break;
      }

      lambda *= config.lambda_up;
      if (step.norm() <= config.step_floor * (1.0 + p.norm())) {
        result.termination = Termination::step_floor;
        done = true;
        break;
      }
    }
  }

  result.params = to_params(p);
  result.rss = current_rss;
  result.sigma2_hat = current_rss / static_cast<double>(n_obs - 5);
  const JacobianMatrix jac = jacobian(result.params, day.grid());
  result.gradient_norm = (jac.transpose() * r).lpNorm<Eigen::Infinity>();
  try {
    result.std_errors = standard_errors(jac, current_rss, n_obs);
  } catch (const NonIdentifiableError&) {
    result.std_errors.reset();
    if (result.converged) {
      result.converged = false;
      result.termination = Termination::domain_violation;
    }
  }
  return result;
}

}  // namespace bcfit

#include "bcfit/bc_model.hpp"

#include <cmath>

#include "bcfit/errors.hpp"

namespace bcfit {

namespace {

void check_tenor(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("tenor must be positive and finite");
}

}  // namespace

bool BcParams::valid() const noexcept {
  return std::isfinite(b) && std::isfinite(c) && std::isfinite(d) && std::isfinite(e) &&
         std::isfinite(f) && e > 0.0;
}

void BcParams::validate() const {
  if (!(e > 0.0)) throw DomainError("inflection tenor e must be positive");
  if (!valid()) throw DomainError("parameters must be finite");
}

namespace {

struct Weights {
  double w;   // 1 / (1 + u)
  double wc;  // u / (1 + u)
};

// exp() is only ever taken of a non-positive exponent, so u = exp(t) never
// overflows however large b (ln x - ln e) gets.
Weights split_weights(const BcParams& p, double x) {
  check_tenor(x);
  p.validate();
  const double t = p.b * (std::log(x) - std::log(p.e));
  if (t > 0.0) {
    const double z = std::exp(-t);
    return {z / (1.0 + z), 1.0 / (1.0 + z)};
  }
  const double u = std::exp(t);
  return {1.0 / (1.0 + u), u / (1.0 + u)};
}

}  // namespace

double logistic_weight(const BcParams& p, double x) { return split_weights(p, x).w; }

double evaluate(const BcParams& p, double x) {
  const double w = logistic_weight(p, x);
  return p.c + (p.d + p.f * x - p.c) * w;
}

std::vector<double> residuals(const BcParams& p, const CurveDay& day) {
  if (day.kind() != CurveKind::spread) throw InputError("residuals require a spread curve");
  const auto& grid = day.grid();
  std::vector<double> r(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) r[j] = day.values()[j] - evaluate(p, grid[j]);
  return r;
}

JacobianMatrix jacobian(const BcParams& p, const TenorGrid& grid) {
  JacobianMatrix jac(static_cast<Eigen::Index>(grid.size()), 5);
  const double log_e = std::log(p.e);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid[j];
    const auto [w, wc] = split_weights(p, x);
    const double n = p.d + p.f * x - p.c;
    const double curvature = w * wc;  // u / (1 + u)^2
    const auto row = static_cast<Eigen::Index>(j);
    jac(row, 0) = -n * curvature * (std::log(x) - log_e);
    jac(row, 1) = wc;
    jac(row, 2) = w;
    jac(row, 3) = n * curvature * p.b / p.e;
    jac(row, 4) = x * w;
  }
  return jac;
}

ShapeDescriptors shape_descriptors(const BcParams& p) {
  p.validate();
  return {p.e, p.d, p.c, p.f};
}

}  // namespace bcfit

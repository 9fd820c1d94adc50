#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "bcfit/curves.hpp"

namespace bcfit {

/// Parameters of the five-parameter Brain-Cousens curve
///
///   y(x) = c + (d + f*x - c) / (1 + exp(b * (ln x - ln e)))
///
/// For b > 0 the curve starts on the line d + f*x at short maturities and
/// settles at the level c for long maturities; e is the tenor at which the
/// logistic weight is exactly one half.
struct BcParams {
  double b = 0.0;  // transition steepness, sign unconstrained
  double c = 0.0;  // long-maturity level
  double d = 0.0;  // short-maturity level
  double e = 1.0;  // inflection tenor, years, > 0
  double f = 0.0;  // slope of the linear branch

  static constexpr std::size_t size = 5;
  static constexpr std::array<const char*, 5> names{"b", "c", "d", "e", "f"};

  std::array<double, 5> to_array() const { return {b, c, d, e, f}; }
  static BcParams from_array(const std::array<double, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

  /// True when every field is finite and e > 0.
  bool valid() const noexcept;
  /// Throws DomainError unless valid().
  void validate() const;

  friend bool operator==(const BcParams&, const BcParams&) = default;
};

using JacobianMatrix = Eigen::Matrix<double, Eigen::Dynamic, 5>;

/// 1 / (1 + exp(b (ln x - ln e))), computed without overflow.
double logistic_weight(const BcParams& p, double x);

double evaluate(const BcParams& p, double x);

/// Observed minus model value at every tenor of a spread curve.
std::vector<double> residuals(const BcParams& p, const CurveDay& day);

/// Rows follow the grid, columns are d/d(b, c, d, e, f).
JacobianMatrix jacobian(const BcParams& p, const TenorGrid& grid);

struct ShapeDescriptors {
  double inflection_tenor;
  double short_end_level;
  double long_end_level;
  double branch_slope;
};

ShapeDescriptors shape_descriptors(const BcParams& p);

}  // namespace bcfit

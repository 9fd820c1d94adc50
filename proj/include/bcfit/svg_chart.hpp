#pragma once

#include <optional>
#include <string>

#include "bcfit/bc_model.hpp"
#include "bcfit/curves.hpp"

namespace bcfit {

inline constexpr int kCurveSamples = 200;

/// Static SVG 1.1 chart of one day's quotes as circle markers and, when
/// given, the fitted curve as a single path sampled at kCurveSamples tenors
/// between the shortest and longest quoted maturity.
std::string render_fit_svg(const CurveDay& day, const std::optional<BcParams>& fit);

}  // namespace bcfit

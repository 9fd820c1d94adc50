#include "bcfit/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace bcfit {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0") s.erase(0, 1);
  return s;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

struct Scale {
  double lo, hi, px_lo, px_hi;
  double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

}  // namespace

std::string render_fit_svg(const CurveDay& day, const std::optional<BcParams>& fit) {
  const auto tenors = day.grid().tenors();
  const auto values = day.values();

  std::vector<double> curve_x;
  std::vector<double> curve_y;
  if (fit) {
    const double x0 = tenors.front();
    const double x1 = tenors.back();
    for (int i = 0; i < kCurveSamples; ++i) {
      const double x = x0 + (x1 - x0) * i / (kCurveSamples - 1);
      curve_x.push_back(x);
      curve_y.push_back(evaluate(*fit, x));
    }
  }

  double y_lo = *std::min_element(values.begin(), values.end());
  double y_hi = *std::max_element(values.begin(), values.end());
  for (double y : curve_y) {
    if (std::isfinite(y)) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (y_hi - y_lo < 1e-9) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double x_hi = tenors.back();
  const Scale sx{0.0, x_hi, kLeft, kWidth - kRight};
  const Scale sy{y_lo, y_hi, kHeight - kBottom, kTop};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << format_date(day.date()) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kHeight - kBottom) << "\" x2=\""
      << fixed(kWidth - kRight) << "\" y2=\"" << fixed(kHeight - kBottom) << "\"/>\n"
      << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft)
      << "\" y2=\"" << fixed(kHeight - kBottom) << "\"/>\n";
  const double xs = tick_step(x_hi, 5);
  for (double t = 0.0; t <= x_hi + 1e-9; t += xs) {
    svg << "<line x1=\"" << fixed(sx(t)) << "\" y1=\"" << fixed(kHeight - kBottom) << "\" x2=\""
        << fixed(sx(t)) << "\" y2=\"" << fixed(kHeight - kBottom + 5) << "\"/>\n";
  }
  const double ys = tick_step(y_hi - y_lo, 5);
  const double y_first = std::ceil(y_lo / ys) * ys;
  for (double t = y_first; t <= y_hi + 1e-12; t += ys) {
    svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(sy(t)) << "\" x2=\""
        << fixed(kLeft) << "\" y2=\"" << fixed(sy(t)) << "\"/>\n";
  }
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t = 0.0; t <= x_hi + 1e-9; t += xs) {
    svg << "<text x=\"" << fixed(sx(t)) << "\" y=\"" << fixed(kHeight - kBottom + 18)
        << "\" text-anchor=\"middle\">" << fixed(t, xs < 1 ? 1 : 0) << "</text>\n";
  }
  const int y_digits = ys >= 1 ? 0 : static_cast<int>(std::ceil(-std::log10(ys)));
  for (double t = y_first; t <= y_hi + 1e-12; t += ys) {
    svg << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(sy(t) + 4)
        << "\" text-anchor=\"end\">" << fixed(t, y_digits) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << fixed((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << "time to maturity (years)</text>\n"
      << "<text x=\"18\" y=\"" << fixed((kTop + kHeight - kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << fixed((kTop + kHeight - kBottom) / 2)
      << ")\">credit spread</text>\n";

  if (fit) {
    svg << "<path class=\"fit\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < curve_x.size(); ++i) {
      svg << (i == 0 ? "M" : " L") << fixed(sx(curve_x[i])) << ',' << fixed(sy(curve_y[i]));
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"quotes\" fill=\"white\" stroke=\"black\" stroke-width=\"1.2\">\n";
  for (std::size_t j = 0; j < tenors.size(); ++j) {
    svg << "<circle cx=\"" << fixed(sx(tenors[j])) << "\" cy=\"" << fixed(sy(values[j]))
        << "\" r=\"3.5\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace bcfit

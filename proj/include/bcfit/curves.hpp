#pragma once

#include <chrono>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bcfit {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);
/// Parses a full decimal token; throws InputError on trailing garbage.
double parse_number(std::string_view text);

enum class CurveKind { issuer, reference, spread };

std::string_view to_string(CurveKind kind);

/// Ordered positive times to maturity, in years.
class TenorGrid {
 public:
  /// Throws InputError unless strictly increasing, finite and > 0.
  explicit TenorGrid(std::vector<double> tenors);

  /// 1..10, 15 and 20 years.
  static TenorGrid standard();

  std::span<const double> tenors() const noexcept { return tenors_; }
  std::size_t size() const noexcept { return tenors_.size(); }
  double operator[](std::size_t i) const { return tenors_[i]; }

  friend bool operator==(const TenorGrid&, const TenorGrid&) = default;

 private:
  std::vector<double> tenors_;
};

/// One dated curve of quoted levels in percentage points.
class CurveDay {
 public:
  CurveDay(Date date, TenorGrid grid, std::vector<double> values, CurveKind kind);

  const Date& date() const noexcept { return date_; }
  const TenorGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  CurveKind kind() const noexcept { return kind_; }

  friend bool operator==(const CurveDay&, const CurveDay&) = default;

 private:
  Date date_;
  TenorGrid grid_;
  std::vector<double> values_;
  CurveKind kind_;
};

/// Date-ordered curves of one kind sharing a single tenor grid.
class CurvePanel {
 public:
  CurvePanel(CurveKind kind, std::vector<CurveDay> days);

  CurveKind kind() const noexcept { return kind_; }
  const std::vector<CurveDay>& days() const noexcept { return days_; }
  std::size_t size() const noexcept { return days_.size(); }
  bool empty() const noexcept { return days_.empty(); }

  /// Grid shared by every day. Requires a non-empty panel.
  const TenorGrid& grid() const;

  /// Throws LookupError when the date is absent.
  const CurveDay& at(const Date& date) const;

  friend bool operator==(const CurvePanel&, const CurvePanel&) = default;

 private:
  CurveKind kind_;
  std::vector<CurveDay> days_;
};

/// Reads the `date,tenor,value` schema. Errors carry the offending line number.
CurvePanel parse_curve_csv(std::istream& in, CurveKind kind);
void write_curve_csv(std::ostream& out, const CurvePanel& panel);

CurvePanel read_curve_file(const std::string& path, CurveKind kind);

enum class SpreadOrientation { issuer_minus_reference, reference_minus_issuer };

std::string_view to_string(SpreadOrientation orientation);
SpreadOrientation parse_orientation(std::string_view text);

/// Pointwise difference of two curves quoted on the same date and grid.
CurveDay compute_spread(const CurveDay& issuer, const CurveDay& reference,
                        SpreadOrientation orientation);

struct AlignedPanels {
  std::vector<std::pair<CurveDay, CurveDay>> pairs;  // (issuer, reference)
  std::vector<Date> dropped_issuer;                  // issuer dates without a reference quote
  std::vector<Date> dropped_reference;
};

/// Pairs the days present in both panels. Throws EmptyDataError if none are.
AlignedPanels align_panels(const CurvePanel& issuer, const CurvePanel& reference);

CurvePanel spread_panel(const AlignedPanels& aligned, SpreadOrientation orientation);

/// Restricts every day to the given tenors, which must all be present in the panel grid.
CurvePanel select_tenors(const CurvePanel& panel, const TenorGrid& grid);

}  // namespace bcfit

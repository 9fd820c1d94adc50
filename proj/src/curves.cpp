#include "bcfit/curves.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "bcfit/errors.hpp"

namespace bcfit {

namespace {

int parse_digits(std::string_view text) {
  int value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw InputError("invalid date '" + std::string(text) + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw InputError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
  }
  Date date{std::chrono::year{parse_digits(text.substr(0, 4))},
            std::chrono::month{static_cast<unsigned>(parse_digits(text.substr(5, 2)))},
            std::chrono::day{static_cast<unsigned>(parse_digits(text.substr(8, 2)))}};
  if (!date.ok()) throw InputError("invalid calendar date '" + std::string(text) + "'");
  return date;
}

std::string format_date(const Date& date) {
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf.data();
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InputError("invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::issuer: return "issuer";
    case CurveKind::reference: return "reference";
    case CurveKind::spread: return "spread";
  }
  return "unknown";
}

TenorGrid::TenorGrid(std::vector<double> tenors) : tenors_(std::move(tenors)) {
  if (tenors_.empty()) throw InputError("empty tenor grid");
  for (std::size_t i = 0; i < tenors_.size(); ++i) {
    if (!std::isfinite(tenors_[i])) throw InputError("non-finite tenor");
    if (tenors_[i] <= 0.0) throw InputError("non-positive tenor " + format_number(tenors_[i]));
    if (i > 0 && tenors_[i] <= tenors_[i - 1]) {
      throw InputError("tenor grid not strictly increasing at " + format_number(tenors_[i]));
    }
  }
}

TenorGrid TenorGrid::standard() {
  return TenorGrid({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20});
}

CurveDay::CurveDay(Date date, TenorGrid grid, std::vector<double> values, CurveKind kind)
    : date_(date), grid_(std::move(grid)), values_(std::move(values)), kind_(kind) {
  if (!date_.ok()) throw InputError("invalid curve date");
  if (values_.size() != grid_.size()) {
    throw InputError("curve " + format_date(date_) + " has " + std::to_string(values_.size()) +
                     " values for " + std::to_string(grid_.size()) + " tenors");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("non-finite value on " + format_date(date_));
  }
}

CurvePanel::CurvePanel(CurveKind kind, std::vector<CurveDay> days)
    : kind_(kind), days_(std::move(days)) {
  for (std::size_t i = 0; i < days_.size(); ++i) {
    if (days_[i].kind() != kind_) {
      throw InputError("curve kind mismatch on " + format_date(days_[i].date()));
    }
    if (i == 0) continue;
    if (!(days_[i - 1].date() < days_[i].date())) {
      throw InputError("dates not strictly increasing at " + format_date(days_[i].date()));
    }
    if (days_[i].grid() != days_[0].grid()) {
      throw InputError("inconsistent tenor grid on " + format_date(days_[i].date()));
    }
  }
}

const TenorGrid& CurvePanel::grid() const {
  if (days_.empty()) throw EmptyDataError("empty panel");
  return days_.front().grid();
}

const CurveDay& CurvePanel::at(const Date& date) const {
  auto it = std::lower_bound(days_.begin(), days_.end(), date,
                             [](const CurveDay& d, const Date& key) { return d.date() < key; });
  if (it == days_.end() || it->date() != date) {
    throw LookupError("no curve for date " + format_date(date));
  }
  return *it;
}

CurvePanel parse_curve_csv(std::istream& in, CurveKind kind) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (line != "date,tenor,value") {
    throw ParseError(1, "expected header 'date,tenor,value'");
  }

  struct Pending {
    Date date;
    std::vector<double> tenors;
    std::vector<double> values;
    std::size_t first_line;
  };
  std::vector<Pending> groups;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(line_no, "empty line");
    }
    auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");

    Date date;
    double tenor = 0.0;
    double value = 0.0;
    try {
      date = parse_date(fields[0]);
      tenor = parse_number(fields[1]);
      value = parse_number(fields[2]);
    } catch (const InputError& err) {
      throw ParseError(line_no, err.what());
    }
    if (!std::isfinite(tenor) || tenor <= 0.0) throw ParseError(line_no, "non-positive tenor");
    if (!std::isfinite(value)) throw ParseError(line_no, "non-finite value");

    if (groups.empty() || groups.back().date < date) {
      groups.push_back({date, {}, {}, line_no});
    } else if (groups.back().date != date) {
      throw ParseError(line_no, "rows not sorted by date");
    }
    auto& group = groups.back();
    if (!group.tenors.empty()) {
      if (tenor == group.tenors.back()) throw ParseError(line_no, "duplicate (date, tenor) pair");
      if (tenor < group.tenors.back()) throw ParseError(line_no, "rows not sorted by tenor");
    }
    group.tenors.push_back(tenor);
    group.values.push_back(value);
  }

  std::vector<CurveDay> days;
  days.reserve(groups.size());
  for (auto& group : groups) {
    if (!days.empty() &&
        !std::equal(group.tenors.begin(), group.tenors.end(), days.front().grid().tenors().begin(),
                    days.front().grid().tenors().end())) {
      throw ParseError(group.first_line, "inconsistent grid for " + format_date(group.date));
    }
    days.emplace_back(group.date, TenorGrid(std::move(group.tenors)), std::move(group.values), kind);
  }
  return CurvePanel(kind, std::move(days));
}

void write_curve_csv(std::ostream& out, const CurvePanel& panel) {
  out << "date,tenor,value\n";
  for (const auto& day : panel.days()) {
    const auto date = format_date(day.date());
    for (std::size_t j = 0; j < day.grid().size(); ++j) {
      out << date << ',' << format_number(day.grid()[j]) << ',' << format_number(day.values()[j])
          << '\n';
    }
  }
}

CurvePanel read_curve_file(const std::string& path, CurveKind kind) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return parse_curve_csv(in, kind);
  } catch (const ParseError& err) {
    throw InputError(path + ": " + err.what());
  }
}

std::string_view to_string(SpreadOrientation orientation) {
  return orientation == SpreadOrientation::issuer_minus_reference ? "issuer-minus-reference"
                                                                  : "reference-minus-issuer";
}

SpreadOrientation parse_orientation(std::string_view text) {
  if (text == "issuer-minus-reference") return SpreadOrientation::issuer_minus_reference;
  if (text == "reference-minus-issuer") return SpreadOrientation::reference_minus_issuer;
  throw InputError("unknown spread orientation '" + std::string(text) + "'");
}

CurveDay compute_spread(const CurveDay& issuer, const CurveDay& reference,
                        SpreadOrientation orientation) {
  if (issuer.date() != reference.date()) {
    throw InputError("date mismatch: " + format_date(issuer.date()) + " vs " +
                     format_date(reference.date()));
  }
  if (issuer.grid() != reference.grid()) {
    throw InputError("grid mismatch on " + format_date(issuer.date()));
  }
  const auto a = issuer.values();
  const auto b = reference.values();
  std::vector<double> spread(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    spread[j] = orientation == SpreadOrientation::issuer_minus_reference ? a[j] - b[j] : b[j] - a[j];
  }
  return CurveDay(issuer.date(), issuer.grid(), std::move(spread), CurveKind::spread);
}

AlignedPanels align_panels(const CurvePanel& issuer, const CurvePanel& reference) {
  AlignedPanels out;
  const auto& a = issuer.days();
  const auto& b = reference.days();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].date() < b[j].date()) {
      out.dropped_issuer.push_back(a[i++].date());
    } else if (b[j].date() < a[i].date()) {
      out.dropped_reference.push_back(b[j++].date());
    } else {
      out.pairs.emplace_back(a[i++], b[j++]);
    }
  }
  for (; i < a.size(); ++i) out.dropped_issuer.push_back(a[i].date());
  for (; j < b.size(); ++j) out.dropped_reference.push_back(b[j].date());
  if (out.pairs.empty()) throw EmptyDataError("issuer and reference panels share no dates");
  return out;
}

CurvePanel spread_panel(const AlignedPanels& aligned, SpreadOrientation orientation) {
  std::vector<CurveDay> days;
  days.reserve(aligned.pairs.size());
  for (const auto& [issuer, reference] : aligned.pairs) {
    days.push_back(compute_spread(issuer, reference, orientation));
  }
  return CurvePanel(CurveKind::spread, std::move(days));
}

CurvePanel select_tenors(const CurvePanel& panel, const TenorGrid& grid) {
  if (panel.empty()) return CurvePanel(panel.kind(), {});
  const auto source = panel.grid().tenors();
  std::vector<std::size_t> index;
  for (double t : grid.tenors()) {
    auto it = std::find(source.begin(), source.end(), t);
    if (it == source.end()) throw InputError("tenor " + format_number(t) + " not in panel grid");
    index.push_back(static_cast<std::size_t>(it - source.begin()));
  }
  std::vector<CurveDay> days;
  for (const auto& day : panel.days()) {
    std::vector<double> values;
    for (auto k : index) values.push_back(day.values()[k]);
    days.emplace_back(day.date(), grid, std::move(values), day.kind());
  }
  return CurvePanel(panel.kind(), std::move(days));
}

}  // namespace bcfit

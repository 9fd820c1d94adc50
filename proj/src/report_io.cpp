#include "bcfit/report_io.hpp"

#include <istream>
#include <ostream>
#include <string_view>

#include "bcfit/errors.hpp"

namespace bcfit {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) return fields;
    start = comma + 1;
  }
}

int parse_int(const std::string& text) {
  const double v = parse_number(text);
  if (v != static_cast<int>(v)) throw InputError("expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::string source_label(const DayOutcome& entry) {
  if (!entry.outcome) return "error";
  if (entry.outcome->source == StartSource::warm) return "warm";
  return "random(" + std::to_string(entry.outcome->random_index) + ")";
}

}  // namespace

std::vector<ReportRow> report_rows(const PanelReport& report) {
  std::vector<ReportRow> rows;
  rows.reserve(report.per_day.size());
  for (const auto& entry : report.per_day) {
    ReportRow row;
    row.date = entry.date;
    row.source = source_label(entry);
    if (entry.outcome) {
      const auto& fit = entry.outcome->result;
      row.converged = fit.converged;
      row.draws_used = entry.outcome->draws_used;
      row.rss = fit.rss;
      row.iterations = fit.iterations;
      if (fit.converged) {
        row.params = fit.params;
        row.std_errors = fit.std_errors;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report_csv(std::ostream& out, const PanelReport& report) {
  out << kReportHeader << '\n';
  for (const auto& row : report_rows(report)) {
    out << format_date(row.date) << ',' << (row.converged ? 1 : 0) << ',' << row.source << ','
        << row.draws_used;
    const auto params = row.params ? std::optional(row.params->to_array()) : std::nullopt;
    for (std::size_t k = 0; k < 5; ++k) {
      out << ',';
      if (params) out << format_number((*params)[k]);
    }
    for (std::size_t k = 0; k < 5; ++k) {
      out << ',';
      if (row.std_errors) out << format_number((*row.std_errors)[k]);
    }
    out << ',';
    if (row.rss) out << format_number(*row.rss);
    out << ',';
    if (row.iterations) out << *row.iterations;
    out << '\n';
  }
}

std::vector<ReportRow> parse_report_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw ParseError(1, "expected report header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 16) throw ParseError(line_no, "expected 16 fields");
    try {
      ReportRow row;
      row.date = parse_date(f[0]);
      if (f[1] != "0" && f[1] != "1") throw InputError("converged must be 0 or 1");
      row.converged = f[1] == "1";
      row.source = f[2];
      row.draws_used = parse_int(f[3]);
      if (!f[4].empty()) {
        std::array<double, 5> v{};
        for (std::size_t k = 0; k < 5; ++k) v[k] = parse_number(f[4 + k]);
        row.params = BcParams::from_array(v);
      }
      if (!f[9].empty()) {
        std::array<double, 5> v{};
        for (std::size_t k = 0; k < 5; ++k) v[k] = parse_number(f[9 + k]);
        row.std_errors = v;
      }
      if (!f[14].empty()) row.rss = parse_number(f[14]);
      if (!f[15].empty()) row.iterations = parse_int(f[15]);
      rows.push_back(std::move(row));
    } catch (const InputError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return rows;
}

void write_truth_csv(std::ostream& out, const std::vector<TruthRow>& truth) {
  out << kTruthHeader << '\n';
  for (const auto& row : truth) {
    out << format_date(row.date);
    for (double v : row.params.to_array()) out << ',' << format_number(v);
    out << ',' << format_number(row.noise_sigma) << '\n';
  }
}

std::vector<TruthRow> parse_truth_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTruthHeader) throw ParseError(1, "expected truth header");
  std::vector<TruthRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields");
    try {
      std::array<double, 5> v{};
      for (std::size_t k = 0; k < 5; ++k) v[k] = parse_number(f[1 + k]);
      rows.push_back({parse_date(f[0]), BcParams::from_array(v), parse_number(f[6])});
    } catch (const InputError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return rows;
}

}  // namespace bcfit

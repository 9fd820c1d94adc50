#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcfit/bc_model.hpp"
#include "bcfit/curves.hpp"
#include "bcfit/pipeline.hpp"

namespace bcfit {

/// One line of the report CSV
/// `date,converged,source,draws_used,b,c,d,e,f,se_b,se_c,se_d,se_e,se_f,rss,iterations`.
/// `source` is `warm`, `random(k)` or `error`; parameter and standard-error
/// fields are empty unless the day converged.
struct ReportRow {
  Date date;
  bool converged = false;
  std::string source;
  int draws_used = 0;
  std::optional<BcParams> params;
  std::optional<std::array<double, 5>> std_errors;
  std::optional<double> rss;
  std::optional<int> iterations;
};

inline constexpr const char* kReportHeader =
    "date,converged,source,draws_used,b,c,d,e,f,se_b,se_c,se_d,se_e,se_f,rss,iterations";
inline constexpr const char* kTruthHeader = "date,b,c,d,e,f,noise_sigma";

std::vector<ReportRow> report_rows(const PanelReport& report);

void write_report_csv(std::ostream& out, const PanelReport& report);
std::vector<ReportRow> parse_report_csv(std::istream& in);

void write_truth_csv(std::ostream& out, const std::vector<TruthRow>& truth);
std::vector<TruthRow> parse_truth_csv(std::istream& in);

}  // namespace bcfit

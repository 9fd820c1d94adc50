#include <doctest.h>

#include <sstream>

#include "bcfit/errors.hpp"
#include "bcfit/report_io.hpp"
#include "oracles.hpp"

using namespace bcfit;

namespace {

const BcParams kLeft = BcParams::from_array(oracle::kLeft);
const BcParams kRight = BcParams::from_array(oracle::kRight);

PanelReport sample_report() {
  auto path = regime_path(kLeft, {{5, kRight}}, 10);
  SyntheticSpec spec;
  spec.truth_path = path;
  spec.noise_sigma = 0.02;
  spec.seed = 1;
  RestartPolicy policy;
  policy.seed = 2;
  policy.max_restarts = 3;
  return run_panel(generate_synthetic(spec).panel, policy);
}

}  // namespace

TEST_CASE("report CSV layout") {
  const auto report = sample_report();
  std::ostringstream out;
  write_report_csv(out, report);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "date,converged,source,draws_used,b,c,d,e,f,se_b,se_c,se_d,se_e,se_f,rss,iterations");

  std::istringstream in(out.str());
  const auto rows = parse_report_csv(in);
  REQUIRE(rows.size() == report.per_day.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& entry = report.per_day[i];
    CHECK(rows[i].date == entry.date);
    CHECK(rows[i].converged == entry.converged());
    if (entry.converged()) {
      REQUIRE(rows[i].params);
      CHECK(*rows[i].params == entry.outcome->result.params);
      CHECK(*rows[i].std_errors == *entry.outcome->result.std_errors);
      CHECK(*rows[i].rss == entry.outcome->result.rss);
    } else {
      CHECK_FALSE(rows[i].params);
      CHECK_FALSE(rows[i].std_errors);
    }
    if (entry.outcome && entry.outcome->source == StartSource::random) {
      CHECK(rows[i].source == "random(" + std::to_string(entry.outcome->random_index) + ")");
    }
  }
}

TEST_CASE("non-converged rows carry empty parameter fields") {
  PanelReport report;
  StartOutcome outcome;
  outcome.result.converged = false;
  outcome.result.rss = 0.25;
  outcome.result.iterations = 200;
  outcome.source = StartSource::random;
  outcome.random_index = 7;
  outcome.draws_used = 50;
  report.per_day.push_back({parse_date("2011-10-21"), outcome, {}});
  report.per_day.push_back({parse_date("2011-10-24"), std::nullopt, "insufficient observations"});
  std::ostringstream out;
  write_report_csv(out, report);
  CHECK(out.str() ==
        std::string(kReportHeader) +
            "\n2011-10-21,0,random(7),50,,,,,,,,,,,0.25,200\n"
            "2011-10-24,0,error,0,,,,,,,,,,,,\n");
}

TEST_CASE("truth CSV round-trips") {
  SyntheticSpec spec;
  spec.truth_path = drift_path(kLeft, kRight, 7);
  spec.noise_sigma = 0.02;
  const auto truth = generate_synthetic(spec).truth;
  std::ostringstream out;
  write_truth_csv(out, truth);
  CHECK(out.str().rfind("date,b,c,d,e,f,noise_sigma\n", 0) == 0);
  std::istringstream in(out.str());
  const auto parsed = parse_truth_csv(in);
  REQUIRE(parsed.size() == truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    CHECK(parsed[i].date == truth[i].date);
    CHECK(parsed[i].params == truth[i].params);
    CHECK(parsed[i].noise_sigma == truth[i].noise_sigma);
  }
}

TEST_CASE("report parser errors") {
  std::istringstream bad_header("date,converged\n");
  CHECK_THROWS_AS(parse_report_csv(bad_header), ParseError);
  std::istringstream short_row(std::string(kReportHeader) + "\n2011-10-21,1,warm\n");
  CHECK_THROWS_AS(parse_report_csv(short_row), ParseError);
}

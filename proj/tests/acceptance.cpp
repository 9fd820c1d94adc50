// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcfit/bc_model.hpp"
#include "bcfit/nls_solver.hpp"
#include "bcfit/pipeline.hpp"
#include "bcfit/report_io.hpp"
#include "bcfit/starting_values.hpp"
#include "cli_support.hpp"
#include "oracles.hpp"

using namespace bcfit;

namespace {

const BcParams kLeft = BcParams::from_array(oracle::kLeft);
const BcParams kRight = BcParams::from_array(oracle::kRight);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Point values of the model for the Table 1 (left) estimates.
Outcome model_point_checks() {
  // 40-digit reference evaluations of the formula.
  constexpr double kAtOne = 0.9090969144871566296;
  constexpr double kAtTwenty = 0.1200670560648042898;
  const double midpoint = (kLeft.c + kLeft.d + kLeft.f * kLeft.e) / 2.0;
  const double err_mid = std::abs(evaluate(kLeft, kLeft.e) - 0.370394895);
  const double err_mid_identity = std::abs(evaluate(kLeft, kLeft.e) - midpoint);
  const double err_one = std::abs(evaluate(kLeft, 1.0) - kAtOne);
  const double err_twenty = std::abs(evaluate(kLeft, 20.0) - kAtTwenty);
  const double worst = std::max({err_mid, err_mid_identity, err_one, err_twenty});
  return {worst <= 1e-10, "max abs error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

// 2. Analytic Jacobian against central finite differences.
Outcome jacobian_check() {
  const auto start = Clock::now();
  std::mt19937_64 gen(20130701);
  std::uniform_real_distribution<double> b(-8.0, 8.0), level(-3.0, 3.0), e(0.5, 25.0),
      f(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BcParams p{b(gen), level(gen), level(gen), e(gen), f(gen)};
    const auto analytic = jacobian(p, TenorGrid::standard());
    const auto fd = oracle::fd_jacobian(p.to_array(), oracle::kGrid);
    for (std::size_t j = 0; j < fd.size(); ++j) {
      for (std::size_t k = 0; k < 5; ++k) {
        const double a = analytic(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        worst = std::max(worst, std::abs(a - fd[j][k]) / std::max(1.0, std::abs(fd[j][k])));
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-6 && elapsed < 1.0,
          "1000 parameter sets, max rel error " + fmt("%.2e", worst) + " (tol 1e-6), " +
              fmt("%.3f s", elapsed)};
}

// 3. Noise-free panels from both Table 1 columns.
Outcome noise_free_recovery() {
  const auto start = Clock::now();
  bool pass = true;
  double worst_rel = 0.0;
  double worst_se = 0.0;
  int converged = 0;
  for (const auto& truth : {kLeft, kRight}) {
    SyntheticSpec spec;
    spec.truth_path = constant_path(truth, 20);
    spec.noise_sigma = 0.0;
    spec.seed = 1;
    RestartPolicy policy;
    policy.seed = 1;
    const auto report = run_panel(generate_synthetic(spec).panel, policy);
    converged += report.converged_days;
    pass = pass && report.converged_days == 20;
    for (const auto& entry : report.per_day) {
      if (!entry.converged()) continue;
      const auto est = entry.outcome->result.params.to_array();
      const auto t = truth.to_array();
      for (std::size_t k = 0; k < 5; ++k) {
        worst_rel = std::max(worst_rel, std::abs(est[k] - t[k]) / std::abs(t[k]));
        worst_se = std::max(worst_se, (*entry.outcome->result.std_errors)[k]);
      }
    }
  }
  const double elapsed = seconds_since(start);
  // Exact data leaves RSS at rounding level (~1e-27), so the errors are zero to rounding.
  pass = pass && worst_rel <= 1e-6 && worst_se <= 1e-8 && elapsed < 1.0;
  return {pass, std::to_string(converged) + "/40 days converged, max rel error " +
                    fmt("%.2e", worst_rel) + " (tol 1e-6), max std error " + fmt("%.2e", worst_se) +
                    ", " + fmt("%.3f s", elapsed)};
}

// Second-order (Box) bias of nonlinear least squares, computed from the
// long-double model via finite-difference Hessians. Diagnostic only.
std::array<double, 5> box_bias(const std::array<double, 5>& theta, double sigma) {
  const auto jac = oracle::fd_jacobian(theta, oracle::kGrid);
  std::array<std::array<double, 5>, 5> jtj{};
  for (const auto& row : jac) {
    for (int i = 0; i < 5; ++i) {
      for (int k = 0; k < 5; ++k) jtj[i][k] += row[i] * row[k];
    }
  }
  const auto inv = oracle::invert5(jtj);
  const std::size_t n = oracle::kGrid.size();
  std::vector<std::array<std::array<double, 5>, 5>> hess(n);
  for (std::size_t k = 0; k < 5; ++k) {
    const double h = 1e-4 * std::max(1.0, std::abs(theta[k]));
    auto hi = theta, lo = theta;
    hi[k] += h;
    lo[k] -= h;
    const auto jh = oracle::fd_jacobian(hi, oracle::kGrid);
    const auto jl = oracle::fd_jacobian(lo, oracle::kGrid);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < 5; ++i) hess[j][i][k] = (jh[j][i] - jl[j][i]) / (2 * h);
    }
  }
  std::array<double, 5> jt_v{};
  for (std::size_t j = 0; j < n; ++j) {
    double trace = 0.0;
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) trace += inv[a][b] * hess[j][b][a];
    }
    for (int i = 0; i < 5; ++i) jt_v[i] += jac[j][i] * trace;
  }
  std::array<double, 5> bias{};
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 5; ++k) bias[i] -= 0.5 * sigma * sigma * inv[i][k] * jt_v[k];
  }
  return bias;
}

// 4. Monte Carlo over noisy replicates at the Table 1 (left) truth.
Outcome noisy_recovery() {
  const auto start = Clock::now();
  constexpr int kReplicates = 1000;
  constexpr double kSigma = 0.02;
  SyntheticSpec spec;
  spec.truth_path = constant_path(kLeft, kReplicates);
  spec.noise_sigma = kSigma;
  spec.seed = 1;
  const auto panel = generate_synthetic(spec).panel;
  RestartPolicy policy;
  policy.seed = 1;

  std::array<double, 5> sum{}, sum_sq{}, se_sum{};
  int n = 0;
  for (const auto& day : panel.days()) {
    const auto outcome = fit_with_restarts(day, kLeft, policy);
    if (!outcome.result.converged) continue;
    ++n;
    const auto v = outcome.result.params.to_array();
    for (std::size_t k = 0; k < 5; ++k) {
      sum[k] += v[k];
      sum_sq[k] += v[k] * v[k];
      se_sum[k] += (*outcome.result.std_errors)[k];
    }
  }
  const auto truth = kLeft.to_array();
  const auto bias = box_bias(truth, kSigma);
  bool pass = n > 0;
  std::ostringstream detail;
  detail << n << "/" << kReplicates << " converged;";
  for (std::size_t k = 0; k < 5; ++k) {
    const double mean = sum[k] / n;
    const double sd = std::sqrt((sum_sq[k] - n * mean * mean) / (n - 1));
    const double z = (mean - truth[k]) / (sd / std::sqrt(static_cast<double>(n)));
    const double ratio = se_sum[k] / n / sd;
    const bool ok_mean = std::abs(z) <= 3.0;
    const bool ok_se = std::abs(ratio - 1.0) <= 0.15;
    pass = pass && ok_mean && ok_se;
    detail << "\n      " << BcParams::names[k] << ": mean-truth " << fmt("%+.4g", mean - truth[k])
           << " (z " << fmt("%+.2f", z) << (ok_mean ? "" : " > 3") << ", 2nd-order bias "
           << fmt("%+.4g", bias[k]) << "), mean se/sd " << fmt("%.3f", ratio)
           << (ok_se ? "" : " outside 1 +/- 0.15");
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 30.0;
  detail << "\n      " << fmt("%.2f s", elapsed);
  return {pass, detail.str()};
}

const std::string kRegimeFlags =
    "simulate --seed 2011 --days 258 --noise 0.02 "
    "--shift 86:1.355,-1.5464,-0.2754,2.4529,1.4679 "
    "--shift 172:4.9129,0.0772,0.93,12.7469,-0.0209";

int converged_count(const std::string& summary) {
  const auto pos = summary.find("converged ");
  if (pos == std::string::npos) return -1;
  return std::stoi(summary.substr(pos + 10));
}

// 5. Restarts versus warm starts only on a 258-day panel with two regime shifts.
Outcome restart_ablation() {
  const auto dir = cli_support::scratch("ac5");
  const auto start = Clock::now();
  if (cli_support::run(dir, kRegimeFlags + " --out s.csv --truth-out t.csv").code != 0) {
    return {false, "simulate failed"};
  }
  const auto with = cli_support::run(dir, "fit --spreads s.csv --seed 7 --out r.csv");
  const auto without =
      cli_support::run(dir, "fit --spreads s.csv --seed 7 --no-restarts --out r0.csv");
  const double elapsed = seconds_since(start);
  const int a = converged_count(with.out);
  const int b = converged_count(without.out);
  const double fraction = a / 258.0;
  const bool pass = with.code == 0 && without.code == 0 && a >= b && fraction >= 0.90 &&
                    elapsed < 10.0;
  return {pass, "with restarts " + std::to_string(a) + "/258 (" + fmt("%.3f", fraction) +
                    ", need >= 0.90), without " + std::to_string(b) + "/258, " +
                    fmt("%.2f s", elapsed)};
}

// 6. Replaying reports reproduces every warm start and every random(k) outcome.
Outcome chain_integrity() {
  SyntheticSpec spec;
  spec.truth_path = regime_path(kLeft, {{86, kRight}, {172, kLeft}}, 258);
  spec.noise_sigma = 0.02;
  spec.seed = 2011;
  const auto panel = generate_synthetic(spec).panel;
  int warm = 0;
  int random = 0;
  std::size_t problems = 0;
  for (auto mode : {RestartMode::first, RestartMode::best}) {
    RestartPolicy policy;
    policy.seed = 7;
    policy.mode = mode;
    const auto report = run_panel(panel, policy);
    for (const auto& entry : report.per_day) {
      if (!entry.outcome) continue;
      if (entry.outcome->source == StartSource::warm) ++warm;
      else ++random;
    }
    problems += replay_report(report, panel, policy).size();
    // Same seed, same outcomes.
    const auto again = run_panel(panel, policy);
    std::ostringstream a, b;
    write_report_csv(a, report);
    write_report_csv(b, again);
    if (a.str() != b.str()) ++problems;
  }
  return {problems == 0, std::to_string(warm) + " warm and " + std::to_string(random) +
                             " random-start days replayed, " + std::to_string(problems) +
                             " discrepancies"};
}

// 7. Byte-identical outputs from repeated CLI runs.
Outcome determinism() {
  const auto dir = cli_support::scratch("ac7");
  bool ok = true;
  for (const char* tag : {"1", "2"}) {
    const std::string t = tag;
    ok = ok && cli_support::run(dir, kRegimeFlags + " --out s" + t + ".csv --truth-out t" + t +
                                         ".csv").code == 0;
    ok = ok && cli_support::run(dir, "fit --spreads s1.csv --seed 7 --out r" + t + ".csv").code == 0;
  }
  const bool same = cli_support::slurp(dir / "s1.csv") == cli_support::slurp(dir / "s2.csv") &&
                    cli_support::slurp(dir / "t1.csv") == cli_support::slurp(dir / "t2.csv") &&
                    cli_support::slurp(dir / "r1.csv") == cli_support::slurp(dir / "r2.csv");
  return {ok && same, same ? "simulate and fit outputs identical across runs"
                           : "outputs differ between runs"};
}

// 8. spreads -> fit -> plot on the shipped fixtures, plus a timed 258-day fit.
Outcome end_to_end() {
  const auto dir = cli_support::scratch("ac8");
  const auto& fx = cli_support::kFixtures;
  const auto spreads = cli_support::run(dir, "spreads --issuer " + fx + "/issuer.csv --reference " +
                                                 fx + "/reference.csv --out cs.csv");
  const auto fit = cli_support::run(dir, "fit --spreads cs.csv --seed 1 --out report.csv");
  if (spreads.code != 0 || fit.code != 0) return {false, "spreads or fit failed"};

  std::ifstream in(dir / "report.csv");
  const auto rows = parse_report_csv(in);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.converged; });
  if (it == rows.end()) return {false, "no converged fixture day to plot"};
  const auto plot = cli_support::run(dir, "plot --spreads cs.csv --report report.csv --date " +
                                              format_date(it->date) + " --out fit.svg");
  const auto svg = cli_support::slurp(dir / "fit.svg");
  const auto markers = cli_support::count(svg, "<circle");
  const auto paths = cli_support::count(svg, "<path");

  if (cli_support::run(dir, kRegimeFlags + " --out big.csv --truth-out big_truth.csv").code != 0) {
    return {false, "simulate failed"};
  }
  const auto start = Clock::now();
  const auto big = cli_support::run(dir, "fit --spreads big.csv --seed 7 --out big_report.csv");
  const double elapsed = seconds_since(start);

  const bool pass = plot.code == 0 && markers == 12 && paths == 1 && big.code == 0 && elapsed < 5.0;
  return {pass, "fixture " + fit.out.substr(0, fit.out.find('\n')) + "; plot " +
                    format_date(it->date) + ": " + std::to_string(markers) + " markers, " +
                    std::to_string(paths) + " path; 258-day fit " + fmt("%.2f s", elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 model point values", model_point_checks},
      {"AC2 jacobian vs finite differences", jacobian_check},
      {"AC3 noise-free recovery", noise_free_recovery},
      {"AC4 noisy recovery and standard errors", noisy_recovery},
      {"AC5 restart ablation", restart_ablation},
      {"AC6 warm-start chain replay", chain_integrity},
      {"AC7 determinism", determinism},
      {"AC8 end-to-end CLI", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome{false, ""};
    try {
      outcome = check();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

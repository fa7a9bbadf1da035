// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// (with sub-lines for the numbers behind it) and exits non-zero when any
// criterion fails. All tolerances are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "fixtures.hpp"
#include "typexp/error.hpp"
#include "typexp/exponents.hpp"
#include "typexp/harness.hpp"
#include "typexp/quantize.hpp"
#include "typexp/robustify.hpp"

namespace fs = std::filesystem;
using namespace typexp;

namespace {

const fs::path kConfigs = TYPEXP_CONFIG_DIR;

// Criterion 1
constexpr double kMinChernoff = 0.0329;
constexpr double kMinChernoffTol = 5e-4;
constexpr double kMinChernoffSeconds = 1.0;
// Criteria 2-4
constexpr int kBits[] = {2, 4, 6, 8, 10};
constexpr double kRepChernoff[] = {0.0351, 0.0310, 0.0186, 0.0318, 0.0315};
constexpr double kPenalty[] = {0.6781, 0.2016, 0.0531};  // q = 2, 4, 6
constexpr double kTableTol = 1e-3;
constexpr bool kPositive[] = {false, false, false, true, true};
// Criterion 5
constexpr std::uint64_t kConvergenceN[] = {50, 100, 200};
constexpr double kConvergenceGap = 0.01;
constexpr double kConvergenceSeconds = 30.0;
// Criterion 6
constexpr std::uint64_t kRatioN = 40;
constexpr double kRatioMinLow = 1.0;
constexpr double kRatioMinHigh = 1.05;
constexpr double kRatioMaxLow = 2.0;
// Criterion 7
constexpr int kAdversaryCases = 1000;
constexpr double kAdversarySlack = 1e-9;
// Criterion 8
constexpr double kFlatSlope = 0.005;
constexpr double kSimulationSeconds = 600.0;
// Criterion 11
constexpr int kDivergencePairs = 1000;
constexpr double kSymmetryTol = 1e-9;
constexpr double kTiltTol = 1e-6;

struct Report {
  int passed = 0;
  int failed = 0;

  void criterion(int id, const std::string& name, bool ok) {
    std::printf("%s  %2d  %s\n", ok ? "PASS" : "FAIL", id, name.c_str());
    std::fflush(stdout);
    (ok ? passed : failed) += 1;
  }
};

__attribute__((format(printf, 1, 2))) void note(const char* fmt, ...) {
  std::printf("          ");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Distribution> quantized(int bits) {
  std::vector<Distribution> out;
  for (const Distribution& p : testing::ternary_set()) out.push_back(quantize_distribution(p, {bits, 0.0}));
  return out;
}

RobustModel quantized_model(int bits) {
  const auto q = quantized(bits);
  return RobustModel(q, quantization_radius(testing::ternary_set(), q).per_hypothesis);
}

std::vector<RunSummary> simulate(const std::string& config) {
  const cli::ExperimentConfig c = cli::load_config(kConfigs / config);
  const cli::ResolvedConfig r = cli::resolve(c);
  return run_experiment(cli::make_plan(c, r));
}

std::vector<RunSummary> rows_for(const std::vector<RunSummary>& all, Rule rule) {
  std::vector<RunSummary> out;
  for (const RunSummary& s : all) {
    if (s.rule == rule) out.push_back(s);
  }
  return out;
}

std::string slope_text(const std::vector<RunSummary>& rows, double* slope) {
  try {
    *slope = empirical_exponent(rows);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", *slope);
    return buf;
  } catch (const UndefinedExponent&) {
    *slope = NAN;
    return "undefined";
  }
}

void criterion1(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  const PairwiseChernoff c = min_pairwise_chernoff(testing::ternary_set());
  const double secs = seconds_since(t0);
  note("min C = %.6f at pair (%zu,%zu), target %.4f +/- %.0e, %.4f s", c.value, c.first + 1,
       c.second + 1, kMinChernoff, kMinChernoffTol, secs);
  rep.criterion(1, "minimum pairwise Chernoff information",
                std::abs(c.value - kMinChernoff) <= kMinChernoffTol && secs < kMinChernoffSeconds);
}

void criterion2(Report& rep) {
  const auto set = testing::ternary_set();
  int mismatches = 0;
  for (const auto& row : testing::quantized_reference()) {
    const auto q = quantized(row.bits);
    for (std::size_t j = 0; j < q.size(); ++j) {
      for (std::size_t a = 0; a < 3; ++a) {
        const std::string got = testing::four_decimals(q[j][a]);
        const std::string want = testing::four_decimals(row.nominals[j][a]);
        if (got != want) {
          ++mismatches;
          note("q=%d Q%zu[%zu]: got %s want %s", row.bits, j + 1, a, got.c_str(), want.c_str());
        }
      }
    }
  }
  note("%d mismatching entries over 75", mismatches);
  rep.criterion(2, "quantized nominal vectors at four decimals", mismatches == 0);
}

void criterion3(Report& rep) {
  bool ok = true;
  double prev_penalty = kInfinity;
  bool monotone = true;
  for (std::size_t i = 0; i < std::size(kBits); ++i) {
    const RobustModel m = quantized_model(kBits[i]);
    const double c = min_pairwise_chernoff(m.representatives()).value;
    const double penalty = robustness_penalty(m);
    const bool c_ok = std::abs(c - kRepChernoff[i]) <= kTableTol;
    ok = ok && c_ok;
    if (i < std::size(kPenalty)) {
      const bool p_ok = std::abs(penalty - kPenalty[i]) <= kTableTol;
      ok = ok && p_ok;
      note("q=%-2d min C(rep) = %.4f (target %.4f) %s   penalty = %.4f (target %.4f) %s", kBits[i], c,
           kRepChernoff[i], c_ok ? "ok" : "off", penalty, kPenalty[i], p_ok ? "ok" : "off");
    } else {
      note("q=%-2d min C(rep) = %.4f (target %.4f) %s   penalty = %.5f (recomputed, eps = %.6g)",
           kBits[i], c, kRepChernoff[i], c_ok ? "ok" : "off", penalty, m.epsilon_max());
    }
    monotone = monotone && penalty < prev_penalty;
    prev_penalty = penalty;
  }
  note("penalty strictly decreasing in q: %s", monotone ? "yes" : "no");
  rep.criterion(3, "robust-model columns of the quantization table", ok && monotone);
}

void criterion4(Report& rep) {
  bool ok = true;
  for (std::size_t i = 0; i < std::size(kBits); ++i) {
    const PositivityVerdict v = positivity_check(quantized_model(kBits[i]));
    note("q=%-2d margin %+.5f positive=%s (expected %s)", kBits[i], v.margin, v.positive ? "yes" : "no",
         kPositive[i] ? "yes" : "no");
    ok = ok && v.positive == kPositive[i];
  }
  rep.criterion(4, "positivity verdicts", ok);
}

void criterion5(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  const HypothesisSet h = HypothesisSet::with_uniform_priors(testing::ternary_set());
  const double c = chernoff_information(h[0], h[1]).value;
  bool ok = true;
  double gap = kInfinity;
  for (std::uint64_t n : kConvergenceN) {
    const TypeMinimum m = min_over_types(h, n, {0, 1});
    gap = m.value - c;
    note("n=%-3llu min over types %.6f, C = %.6f, gap %.6f", static_cast<unsigned long long>(n), m.value,
         c, gap);
    ok = ok && m.value >= c;
  }
  const double secs = seconds_since(t0);
  note("%.2f s", secs);
  rep.criterion(5, "type-lattice minimum converges to Chernoff information",
                ok && gap < kConvergenceGap && secs < kConvergenceSeconds);
}

void criterion6(Report& rep) {
  const auto curve = ratio_curve(HypothesisSet::with_uniform_priors(testing::ternary_set()), kRatioN);
  const double lo = curve.front().ratio;
  const double hi = curve.back().ratio;
  note("n=%llu, %zu types, min ratio %.5f, max ratio %.3f", static_cast<unsigned long long>(kRatioN),
       curve.size(), lo, hi);
  rep.criterion(6, "sorted per-type exponent ratio curve",
                lo >= kRatioMinLow && lo <= kRatioMinHigh && hi > kRatioMaxLow);
}

void criterion7(Report& rep) {
  std::mt19937_64 gen(20240707);
  std::uniform_real_distribution<double> radius(0.0, 0.3);
  int violations = 0;
  double closest = kInfinity;
  for (int i = 0; i < kAdversaryCases; ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 4);
    const Distribution q = testing::random_distribution(gen, k, 0.15);
    const double eps = radius(gen);
    const Distribution p = testing::perturb_within(q, eps, gen);
    const RobustModel m({q, Distribution::uniform(k)}, {eps, 0.0});
    const TypeVector t = testing::random_type(gen, 1 + static_cast<std::uint64_t>(i % 200), k);
    const double slack = robust_sequence_log_bound(t, m, 0) - sequence_log_prob(t, p);
    closest = std::min(closest, slack);
    if (slack < -kAdversarySlack) ++violations;
  }
  note("%d cases, %d violations, smallest slack %.3g bits", kAdversaryCases, violations, closest);
  rep.criterion(7, "per-sequence probability bound against adversaries", violations == 0);
}

void criterion8(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();

  const auto fine = simulate("table1-eps0005.yaml");
  const RunSummary robust_last = rows_for(fine, Rule::kRobust).back();
  const RunSummary dgl_last = rows_for(fine, Rule::kDgl).back();
  const bool a = robust_last.pe_hat + robust_last.ci95_halfwidth < dgl_last.pe_hat - dgl_last.ci95_halfwidth;
  note("eps=0.005, n=%llu: robust %.3g +/- %.2g, dgl %.3g +/- %.2g -> separated: %s",
       static_cast<unsigned long long>(robust_last.n), robust_last.pe_hat, robust_last.ci95_halfwidth,
       dgl_last.pe_hat, dgl_last.ci95_halfwidth, a ? "yes" : "no");
  for (std::size_t i = 0; i < rows_for(fine, Rule::kRobust).size(); ++i) {
    const RunSummary r = rows_for(fine, Rule::kRobust)[i];
    const RunSummary d = rows_for(fine, Rule::kDgl)[i];
    note("    n=%-3llu robust %.5f  dgl %.5f", static_cast<unsigned long long>(r.n), r.pe_hat, d.pe_hat);
  }

  const auto mid = simulate("table1-eps003.yaml");
  const auto mid_robust = rows_for(mid, Rule::kRobust);
  const auto mid_dgl = rows_for(mid, Rule::kDgl);
  bool b = false;
  for (std::size_t i = 0; i < mid_robust.size(); ++i) {
    if (mid_dgl[i].pe_hat < mid_robust[i].pe_hat) {
      if (!b) {
        note("eps=0.03: first n with dgl below robust is %llu (%.5f < %.5f)",
             static_cast<unsigned long long>(mid_dgl[i].n), mid_dgl[i].pe_hat, mid_robust[i].pe_hat);
      }
      b = true;
    }
  }
  if (!b) note("eps=0.03: dgl never below robust");

  const auto coarse = simulate("table1-eps01.yaml");
  double robust_slope = 0.0, dgl_slope = 0.0;
  const std::string rs = slope_text(rows_for(coarse, Rule::kRobust), &robust_slope);
  const std::string ds = slope_text(rows_for(coarse, Rule::kDgl), &dgl_slope);
  const bool c = robust_slope <= kFlatSlope && dgl_slope <= kFlatSlope;
  note("eps=0.1: slopes robust %s, dgl %s bits/symbol (limit %.3f)", rs.c_str(), ds.c_str(), kFlatSlope);

  const double secs = seconds_since(t0);
  note("sub-checks: eps=0.005 %s, eps=0.03 %s, eps=0.1 %s; %.1f s", a ? "pass" : "FAIL",
       b ? "pass" : "FAIL", c ? "pass" : "FAIL", secs);
  rep.criterion(8, "robust test against the Scheffe selector across radii",
                a && b && c && secs < kSimulationSeconds);
}

void criterion9(Report& rep) {
  const auto fig = simulate("fig1.yaml");
  const auto q8 = simulate("table2-q8.yaml");
  bool ok = true;
  auto check = [&](const std::vector<RunSummary>& rows, const char* label) {
    for (const RunSummary& s : rows) {
      const bool holds = s.bound_value && s.pe_hat - s.ci95_halfwidth <= *s.bound_value;
      ok = ok && holds;
      if (!holds) {
        note("%s n=%llu: pe %.4g - ci %.2g exceeds bound %.4g", label,
             static_cast<unsigned long long>(s.n), s.pe_hat, s.ci95_halfwidth,
             s.bound_value.value_or(NAN));
      }
    }
    const RunSummary& last = rows.back();
    note("%s: %zu lengths, at n=%llu pe %.4g, bound %.4g", label, rows.size(),
         static_cast<unsigned long long>(last.n), last.pe_hat, last.bound_value.value_or(NAN));
  };
  check(rows_for(fig, Rule::kNn), "nn on the hypotheses");
  check(rows_for(q8, Rule::kRobust), "robust on 8-bit nominals");
  rep.criterion(9, "simulated error never exceeds the analytic bounds", ok);
}

void criterion10(Report& rep) {
  const fs::path dir = fs::temp_directory_path() / ("typexp_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> csv;
  bool ran = true;
  for (const char* threads : {"1", "8"}) {
    ::setenv("TYPEXP_THREADS", threads, 1);
    const fs::path out = dir / (std::string("run") + threads + ".csv");
    std::ostringstream sink, err;
    const int code = cli::run_cli({"typexp", "simulate", "--config", (kConfigs / "table1-eps003.yaml").string(),
                                   "--out", out.string()},
                                  sink, err);
    ran = ran && code == 0;
    std::ifstream in(out, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    csv.push_back(s.str());
  }
  ::unsetenv("TYPEXP_THREADS");
  fs::remove_all(dir);
  const bool same = ran && !csv[0].empty() && csv[0] == csv[1];
  note("1 vs 8 workers: %zu bytes vs %zu bytes, identical: %s", csv[0].size(), csv[1].size(),
       same ? "yes" : "no");
  rep.criterion(10, "simulation output independent of worker count", same);
}

void criterion11(Report& rep) {
  std::mt19937_64 gen(20241019);
  int sason = 0, chain = 0, symmetry = 0, tilt = 0;
  double worst_tilt = 0.0;
  for (int i = 0; i < kDivergencePairs; ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 5);
    const Distribution p = testing::random_distribution(gen, k);
    const Distribution q = testing::random_distribution(gen, k);
    const ChernoffResult c = chernoff_information(p, q);
    const double v = variational_distance(p, q);
    const double s = sason_lower_bound(p, q);
    if (c.value + 1e-12 < s) ++sason;
    if (s + 1e-15 < 0.5 * v * v / std::log(2.0)) ++chain;
    if (std::abs(c.value - chernoff_information(q, p).value) > kSymmetryTol) ++symmetry;
    const Distribution m = tilted(p, q, c.lambda_star);
    const double dp = kl_divergence(m, p);
    const double dq = kl_divergence(m, q);
    const double err = std::max({std::abs(dp - dq), std::abs(dp - c.value), std::abs(dq - c.value)});
    worst_tilt = std::max(worst_tilt, err);
    if (err >= kTiltTol) ++tilt;
  }
  note("%d pairs: Sason violations %d, V^2/2 chain violations %d, asymmetric %d, tilt mismatches %d "
       "(worst %.2g)",
       kDivergencePairs, sason, chain, symmetry, tilt, worst_tilt);
  rep.criterion(11, "divergence inequalities and tilted equalization",
                sason == 0 && chain == 0 && symmetry == 0 && tilt == 0);
}

}  // namespace

int main() {
  Report rep;
  const std::vector<std::function<void(Report&)>> checks{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10, criterion11};
  for (const auto& check : checks) {
    try {
      check(rep);
    } catch (const std::exception& e) {
      std::printf("          unexpected error: %s\n", e.what());
      rep.criterion(rep.passed + rep.failed + 1, "aborted", false);
    }
  }
  std::printf("%d of %d criteria passed\n", rep.passed, rep.passed + rep.failed);
  return rep.failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

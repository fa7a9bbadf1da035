#pragma once

// Seeded Monte Carlo estimation of the Bayesian error probability
// P(e) = sum_i P(e | H_i) P(H_i) for each decision rule across a sweep of
// sequence lengths.
//
// Every trial owns an independent RandomStream keyed by
// (base_seed, rule, n, trial_index). Trials are spread over worker threads
// and their error counts are summed, so results do not depend on the worker
// count or on scheduling.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "typexp/decide.hpp"
#include "typexp/robustify.hpp"

namespace typexp {

enum class Rule : std::uint8_t {
  kNn = 0,
  kMap = 1,
  kRobust = 2,
  /// Minimum-distance Scheffe selector on the nominals.
  kDgl = 3,
  /// Scheffe tournament on the nominals.
  kDglTournament = 4,
};

std::string_view to_string(Rule rule);
/// Accepts nn, map, robust, dgl, dgl_tournament. Throws ValidationError otherwise.
Rule parse_rule(std::string_view name);
bool needs_robust_model(Rule rule);

struct ExperimentPlan {
  HypothesisSet truth;
  std::optional<RobustModel> robust_model;
  std::vector<Rule> rules;
  std::vector<std::uint64_t> n_values;
  std::uint64_t trials = 100'000;
  std::uint64_t base_seed = 0;
  /// 0 picks the TYPEXP_THREADS environment variable, else hardware concurrency.
  unsigned workers = 0;
};

/// Throws ValidationError for an inconsistent plan.
void validate(const ExperimentPlan& plan);

struct TrialRecord {
  std::size_t true_index = 0;
  std::size_t decided_index = 0;
};

/// Draws a hypothesis from the priors, samples n symbols from its true
/// distribution and applies the rule.
TrialRecord run_trial(const ExperimentPlan& plan, Rule rule, std::uint64_t n,
                      std::uint64_t trial_index);

struct RunSummary {
  Rule rule = Rule::kNn;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double pe_hat = 0.0;
  /// 1.96 sqrt(pe (1 - pe) / trials); for zero-error cells the one-sided
  /// rule-of-three bound 3 / trials.
  double ci95_halfwidth = 0.0;
  std::optional<double> bound_exponent;
  std::optional<double> bound_value;
};

/// Builds a summary from raw counts and attaches no bound.
RunSummary summarize(Rule rule, std::uint64_t n, std::uint64_t trials, std::uint64_t errors);

/// One summary per (rule, n) in plan order. The nn rule carries the
/// classical bound and the robust rule the robust-model bound.
std::vector<RunSummary> run_experiment(const ExperimentPlan& plan);

/// Least-squares slope of -log2(pe_hat) against n over cells with errors.
/// Throws UndefinedExponent with fewer than three such cells.
double empirical_exponent(std::span<const RunSummary> summaries);

/// Header `rule,n,trials,errors,pe_hat,ci95,bound_exponent,bound_value`.
/// Missing bounds print as nan.
void write_summaries_csv(std::ostream& out, std::span<const RunSummary> summaries);

/// Worker count resolution used by run_experiment.
unsigned resolve_workers(unsigned requested);

}  // namespace typexp

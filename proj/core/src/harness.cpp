#include "typexp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "typexp/error.hpp"
#include "typexp/exponents.hpp"
#include "typexp/format.hpp"
#include "typexp/random.hpp"

namespace typexp {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kNn: return "nn";
    case Rule::kMap: return "map";
    case Rule::kRobust: return "robust";
    case Rule::kDgl: return "dgl";
    case Rule::kDglTournament: return "dgl_tournament";
  }
  return "unknown";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : {Rule::kNn, Rule::kMap, Rule::kRobust, Rule::kDgl, Rule::kDglTournament}) {
    if (to_string(r) == name) return r;
  }
  throw ValidationError("unknown rule '" + std::string(name) + "'");
}

bool needs_robust_model(Rule rule) {
  return rule == Rule::kRobust || rule == Rule::kDgl || rule == Rule::kDglTournament;
}

void validate(const ExperimentPlan& plan) {
  if (plan.trials < 1) throw ValidationError("trials must be at least 1");
  if (plan.rules.empty()) throw ValidationError("no rules selected");
  if (plan.n_values.empty()) throw ValidationError("no sequence lengths selected");
  for (std::uint64_t n : plan.n_values) {
    if (n < 1) throw ValidationError("sequence lengths must be positive");
  }
  if (plan.robust_model) {
    if (plan.robust_model->size() != plan.truth.size() ||
        plan.robust_model->alphabet_size() != plan.truth.alphabet_size()) {
      throw ValidationError("robust model does not match the hypothesis set");
    }
  }
  for (Rule r : plan.rules) {
    if (needs_robust_model(r) && !plan.robust_model) {
      throw ValidationError("rule '" + std::string(to_string(r)) + "' needs nominal distributions");
    }
  }
}

TrialRecord run_trial(const ExperimentPlan& plan, Rule rule, std::uint64_t n,
                      std::uint64_t trial_index) {
  RandomStream rng(derive_key({plan.base_seed, static_cast<std::uint64_t>(rule), n, trial_index}));

  std::vector<double> prior_cdf(plan.truth.size());
  double running = 0.0;
  for (std::size_t i = 0; i < prior_cdf.size(); ++i) {
    running += plan.truth.priors()[i];
    prior_cdf[i] = running;
  }
  prior_cdf.back() = 1.0;

  TrialRecord rec;
  rec.true_index = sample_symbol(prior_cdf, rng);
  const TypeVector t = sample_type(plan.truth[rec.true_index], n, rng);

  switch (rule) {
    case Rule::kNn: rec.decided_index = nn_decide(plan.truth, t).index; break;
    case Rule::kMap: rec.decided_index = map_decide(plan.truth, t).index; break;
    case Rule::kRobust: rec.decided_index = robust_decide(*plan.robust_model, t).index; break;
    case Rule::kDgl:
      rec.decided_index =
          dgl_decide(plan.robust_model->nominals(), t, DglVariant::kMinimumDistance).index;
      break;
    case Rule::kDglTournament:
      rec.decided_index =
          dgl_decide(plan.robust_model->nominals(), t, DglVariant::kTournament).index;
      break;
  }
  return rec;
}

RunSummary summarize(Rule rule, std::uint64_t n, std::uint64_t trials, std::uint64_t errors) {
  RunSummary s;
  s.rule = rule;
  s.n = n;
  s.trials = trials;
  s.errors = errors;
  const double t = static_cast<double>(trials);
  s.pe_hat = static_cast<double>(errors) / t;
  s.ci95_halfwidth =
      errors == 0 ? 3.0 / t : 1.96 * std::sqrt(s.pe_hat * (1.0 - s.pe_hat) / t);
  return s;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TYPEXP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::uint64_t count_errors(const ExperimentPlan& plan, Rule rule, std::uint64_t n,
                           unsigned workers) {
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (plan.trials + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> errors{0};

  auto work = [&] {
    std::uint64_t local = 0;
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t end = std::min(plan.trials, (c + 1) * kChunk);
      for (std::uint64_t k = c * kChunk; k < end; ++k) {
        const TrialRecord r = run_trial(plan, rule, n, k);
        local += r.true_index != r.decided_index ? 1 : 0;
      }
    }
    errors += local;
  };

  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return errors.load();
}

}  // namespace

std::vector<RunSummary> run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  const unsigned workers = resolve_workers(plan.workers);
  std::vector<RunSummary> out;
  out.reserve(plan.rules.size() * plan.n_values.size());
  for (Rule rule : plan.rules) {
    for (std::uint64_t n : plan.n_values) {
      RunSummary s = summarize(rule, n, plan.trials, count_errors(plan, rule, n, workers));
      std::optional<ErrorBound> bound;
      if (rule == Rule::kNn) bound = classical_bound(plan.truth, n);
      if (rule == Rule::kRobust) bound = robust_error_bound(*plan.robust_model, n);
      if (bound) {
        s.bound_exponent = bound->exponent;
        s.bound_value = std::exp2(bound->log2_bound);
      }
      out.push_back(s);
    }
  }
  return out;
}

double empirical_exponent(std::span<const RunSummary> summaries) {
  std::vector<std::pair<double, double>> pts;
  for (const RunSummary& s : summaries) {
    if (s.errors > 0) pts.emplace_back(static_cast<double>(s.n), -std::log2(s.pe_hat));
  }
  if (pts.size() < 3) {
    throw UndefinedExponent("need at least three cells with observed errors, have " +
                            std::to_string(pts.size()));
  }
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw UndefinedExponent("all cells share one sequence length");
  return sxy / sxx;
}

void write_summaries_csv(std::ostream& out, std::span<const RunSummary> summaries) {
  out << "rule,n,trials,errors,pe_hat,ci95,bound_exponent,bound_value\n";
  const double nan = std::nan("");
  for (const RunSummary& s : summaries) {
    out << to_string(s.rule) << ',' << s.n << ',' << s.trials << ',' << s.errors << ','
        << format_real(s.pe_hat) << ',' << format_real(s.ci95_halfwidth) << ','
        << format_real(s.bound_exponent.value_or(nan)) << ','
        << format_real(s.bound_value.value_or(nan)) << '\n';
  }
}

}  // namespace typexp

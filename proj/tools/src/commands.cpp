#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "typexp/error.hpp"
#include "typexp/exponents.hpp"
#include "typexp/format.hpp"
#include "typexp/harness.hpp"
#include "typexp/quantize.hpp"
#include "typexp/robustify.hpp"

namespace typexp::cli {
namespace {

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return format_real(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string vector_text(const Distribution& p, int decimals) {
  std::string s = "[";
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    if (a) s += ", ";
    s += fixed(p[a], decimals);
  }
  return s + "]";
}

std::vector<double> parse_inline_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("malformed probability vector '" + text + "'");
    }
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

void close_output(std::ofstream& f, const std::string& path) {
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> n;
  std::vector<int> bits;
  std::vector<std::string> dists;
  std::string out_path;
  std::string csv_path;
};

ExperimentConfig load_required(const Options& o) {
  if (o.config_path.empty()) throw ValidationError("--config is required");
  ExperimentConfig c = load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (!o.out_path.empty()) c.output = o.out_path;
  return c;
}

std::string pad(const std::string& s, std::size_t width) {
  return std::string(width > s.size() ? width - s.size() : 1, ' ') + s;
}

// Pairwise V, D both ways, C with its minimizer, and the Sason lower bound.
int cmd_divergences(const Options& o, std::ostream& out) {
  std::vector<Distribution> dists;
  if (!o.dists.empty()) {
    for (const auto& text : o.dists) dists.emplace_back(parse_inline_vector(text));
  } else {
    const ResolvedConfig r = resolve(load_required(o));
    dists.assign(r.truth.distributions().begin(), r.truth.distributions().end());
  }
  if (dists.size() < 2) throw ValidationError("need at least two distributions");
  for (const auto& d : dists) require_same_alphabet(dists.front(), d);

  std::ostringstream csv;
  csv << "i,j,variational,kl_ij,kl_ji,chernoff,lambda_star,sason_bound\n";
  out << pad("i", 3) << pad("j", 3) << pad("V", 12) << pad("D(i||j)", 12) << pad("D(j||i)", 12)
      << pad("C", 12) << pad("lambda*", 12) << pad("sason", 12) << '\n';
  PairwiseChernoff best;
  best.value = kInfinity;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (std::size_t j = i + 1; j < dists.size(); ++j) {
      const double v = variational_distance(dists[i], dists[j]);
      const double dij = kl_divergence(dists[i], dists[j]);
      const double dji = kl_divergence(dists[j], dists[i]);
      const ChernoffResult c = chernoff_information(dists[i], dists[j]);
      const double sason = sason_lower_bound(dists[i], dists[j]);
      if (c.value < best.value) best = {c.value, c.lambda_star, i, j};
      out << pad(std::to_string(i + 1), 3) << pad(std::to_string(j + 1), 3)
          << pad(fixed(v, 6), 12) << pad(fixed(dij, 6), 12) << pad(fixed(dji, 6), 12)
          << pad(fixed(c.value, 6), 12) << pad(fixed(c.lambda_star, 6), 12)
          << pad(fixed(sason, 6), 12) << '\n';
      csv << (i + 1) << ',' << (j + 1) << ',' << format_real(v) << ',' << format_real(dij) << ','
          << format_real(dji) << ',' << format_real(c.value) << ','
          << format_real(c.lambda_star) << ',' << format_real(sason) << '\n';
    }
  }
  out << "min C = " << fixed(best.value, 4) << " (pair " << best.first + 1 << ","
      << best.second + 1 << ")\n";
  if (!o.csv_path.empty()) {
    auto f = open_output(o.csv_path);
    f << csv.str();
    close_output(f, o.csv_path);
  }
  return kOk;
}

int cmd_ratio_curve(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load_required(o);
  const ResolvedConfig r = resolve(c);
  const std::uint64_t n = o.n.value_or(40);
  const auto curve = ratio_curve(r.truth, n);
  const std::string path = !o.out_path.empty() ? o.out_path : o.csv_path;
  if (path.empty()) {
    write_ratio_curve_csv(out, curve);
    return kOk;
  }
  auto f = open_output(path);
  write_ratio_curve_csv(f, curve);
  close_output(f, path);
  out << "n=" << n << " types=" << curve.size() << " min ratio=" << fixed(curve.front().ratio, 6)
      << " max ratio=" << fixed(curve.back().ratio, 6) << " -> " << path << '\n';
  return kOk;
}

// Quantized nominal sets with their robust-model summary, one block per q.
int cmd_quantize(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load_required(o);
  std::vector<int> bits = o.bits;
  if (bits.empty() && c.quantizer_bits) bits = {*c.quantizer_bits};
  if (bits.empty()) bits = {2, 4, 6, 8, 10};
  const ResolvedConfig r = resolve(c);
  const auto truth = r.truth.distributions();

  std::ostringstream csv;
  csv << "bits,epsilon,min_chernoff_rep,penalty,margin,positive\n";
  for (int q : bits) {
    std::vector<Distribution> nominals;
    for (const Distribution& p : truth) nominals.push_back(quantize_distribution(p, {q, 0.0}));
    const QuantizationRadius radius = quantization_radius(truth, nominals);
    const RobustModel model = build_robust_model(nominals, radius.per_hypothesis);
    const double min_c = min_pairwise_chernoff(model.representatives()).value;
    const PositivityVerdict verdict = positivity_check(model);
    out << "q=" << q << "  eps=" << fixed(radius.epsilon, 6) << "  min C(rep)=" << fixed(min_c, 4)
        << "  log2(1+|X|eps)=" << fixed(robustness_penalty(model), 4)
        << "  positive=" << (verdict.positive ? "yes" : "no") << " (margin "
        << fixed(verdict.margin, 4) << ")\n";
    for (std::size_t j = 0; j < nominals.size(); ++j) {
      out << "  Q" << j + 1 << " = " << vector_text(nominals[j], 4) << '\n';
    }
    csv << q << ',' << format_real(radius.epsilon) << ',' << format_real(min_c) << ','
        << format_real(robustness_penalty(model)) << ',' << format_real(verdict.margin) << ','
        << (verdict.positive ? "true" : "false") << '\n';
  }
  if (!o.csv_path.empty()) {
    auto f = open_output(o.csv_path);
    f << csv.str();
    close_output(f, o.csv_path);
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load_required(o);
  const ResolvedConfig r = resolve(c);
  const ExperimentPlan plan = make_plan(c, r);
  // Open before running so a bad path fails fast.
  std::optional<std::ofstream> file;
  if (!c.output.empty()) file = open_output(c.output);

  const auto summaries = run_experiment(plan);
  if (!file) {
    write_summaries_csv(out, summaries);
    return kOk;
  }
  write_summaries_csv(*file, summaries);
  close_output(*file, c.output);

  out << pad("rule", 16) << pad("n", 6) << pad("errors", 9) << pad("pe_hat", 14)
      << pad("ci95", 14) << pad("bound", 14) << '\n';
  for (const RunSummary& s : summaries) {
    out << pad(std::string(to_string(s.rule)), 16) << pad(std::to_string(s.n), 6)
        << pad(std::to_string(s.errors), 9) << pad(format_real(s.pe_hat), 14)
        << pad(format_real(s.ci95_halfwidth), 14)
        << pad(s.bound_value ? format_real(*s.bound_value) : "-", 14) << '\n';
  }
  out << "wrote " << c.output << '\n';
  return kOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load_required(o);
  const ResolvedConfig r = resolve(c);
  const std::vector<std::uint64_t> ns = o.n ? std::vector<std::uint64_t>{*o.n} : c.n_values;

  std::ostringstream csv;
  csv << "n,classical_exponent,classical_log2_bound,robust_exponent,robust_log2_bound\n";
  const double nan = std::nan("");
  out << "min C(P_i,P_j) = " << fixed(min_pairwise_chernoff(r.truth.distributions()).value, 4)
      << '\n';
  if (r.robust_model) {
    const PositivityVerdict v = positivity_check(*r.robust_model);
    out << "robust model: eps=" << fixed(r.robust_model->epsilon_max(), 6)
        << " margin=" << fixed(v.margin, 4) << " positive=" << (v.positive ? "yes" : "no")
        << '\n';
  }
  out << pad("n", 6) << pad("classical E", 14) << pad("log2 bound", 14);
  if (r.robust_model) out << pad("robust E", 14) << pad("log2 bound", 14);
  out << '\n';
  for (std::uint64_t n : ns) {
    const ErrorBound cb = classical_bound(r.truth, n);
    std::optional<ErrorBound> rb;
    if (r.robust_model) rb = robust_error_bound(*r.robust_model, n);
    out << pad(std::to_string(n), 6) << pad(fixed(cb.exponent, 6), 14)
        << pad(fixed(cb.log2_bound, 4), 14);
    if (rb) out << pad(fixed(rb->exponent, 6), 14) << pad(fixed(rb->log2_bound, 4), 14);
    out << '\n';
    csv << n << ',' << format_real(cb.exponent) << ',' << format_real(cb.log2_bound) << ','
        << format_real(rb ? rb->exponent : nan) << ',' << format_real(rb ? rb->log2_bound : nan)
        << '\n';
  }
  if (!o.csv_path.empty()) {
    auto f = open_output(o.csv_path);
    f << csv.str();
    close_output(f, o.csv_path);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian multiple hypothesis testing over finite alphabets", "typexp"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Experiment config (YAML)");
    sub->add_option("--seed", o.seed, "Override the config seed");
  };

  auto* divergences = app.add_subcommand("divergences", "Pairwise V, D, C and Sason bound");
  add_common(divergences);
  divergences->add_option("--dist", o.dists, "Inline probability vector, comma separated");
  divergences->add_option("--csv", o.csv_path, "Also write the table as CSV");

  auto* ratio = app.add_subcommand("ratio-curve", "Sorted per-type exponent ratio curve");
  add_common(ratio);
  ratio->add_option("--n", o.n, "Sequence length (default 40)")->check(CLI::PositiveNumber);
  ratio->add_option("--out,--csv", o.out_path, "CSV output path (default stdout)");

  auto* quantize = app.add_subcommand("quantize", "Quantized nominals and robust-bound summary");
  add_common(quantize);
  quantize->add_option("--bits", o.bits, "Bit widths, e.g. 2,4,6")->delimiter(',');
  quantize->add_option("--csv", o.csv_path, "Also write the summary as CSV");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error-probability sweep");
  add_common(simulate);
  simulate->add_option("--trials", o.trials, "Override trials per cell")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out,--csv", o.out_path, "CSV output path (default: config output)");

  auto* bounds = app.add_subcommand("bounds", "Classical and robust error bounds across n");
  add_common(bounds);
  bounds->add_option("--n", o.n, "Single sequence length")->check(CLI::PositiveNumber);
  bounds->add_option("--csv", o.csv_path, "Also write the bounds as CSV");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  try {
    if (divergences->parsed()) return cmd_divergences(o, out);
    if (ratio->parsed()) return cmd_ratio_curve(o, out);
    if (quantize->parsed()) return cmd_quantize(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const DegenerateRatio& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const EnumerationOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kEnumerationOverflow;
  } catch (const QuantizationError& e) {
    err << "error: " << e.what() << '\n';
    return kQuantizationFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace typexp::cli

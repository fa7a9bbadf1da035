#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "typexp/error.hpp"
#include "typexp/quantize.hpp"

namespace typexp::cli {
namespace {

const std::set<std::string> kKnownKeys = {
    "alphabet_size", "hypotheses", "priors", "nominals", "epsilons", "quantizer_bits",
    "rules",         "n_values",   "trials", "seed",     "output"};

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ValidationError("config key '" + key + "' has a malformed value");
  }
}

std::vector<double> vector_of(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ValidationError("config key '" + key + "' must be a list");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(scalar<double>(item, key));
  return out;
}

std::vector<std::vector<double>> matrix_of(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) {
    throw ValidationError("config key '" + key + "' must be a list of vectors");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : node) out.push_back(vector_of(row, key));
  return out;
}

std::vector<Distribution> distributions_of(const std::vector<std::vector<double>>& rows,
                                           std::size_t alphabet_size, const char* what) {
  std::vector<Distribution> out;
  for (const auto& row : rows) {
    if (row.size() != alphabet_size) {
      throw ValidationError(std::string(what) + " vector has " + std::to_string(row.size()) +
                            " entries, alphabet_size is " + std::to_string(alphabet_size));
    }
    out.emplace_back(row);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ValidationError("config must be a mapping of keys to values");

  ExperimentConfig c;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKnownKeys.contains(key)) throw ValidationError("unknown config key '" + key + "'");
  }
  if (root["alphabet_size"]) c.alphabet_size = scalar<std::size_t>(root["alphabet_size"], "alphabet_size");
  if (root["hypotheses"]) c.hypotheses = matrix_of(root["hypotheses"], "hypotheses");
  if (root["priors"]) c.priors = vector_of(root["priors"], "priors");
  if (root["nominals"]) c.nominals = matrix_of(root["nominals"], "nominals");
  if (const auto eps = root["epsilons"]) {
    if (eps.IsScalar() && eps.as<std::string>() == "auto") {
      c.epsilons.reset();
    } else {
      c.epsilons = vector_of(eps, "epsilons");
    }
  }
  if (root["quantizer_bits"]) c.quantizer_bits = scalar<int>(root["quantizer_bits"], "quantizer_bits");
  if (const auto rules = root["rules"]) {
    if (!rules.IsSequence()) throw ValidationError("config key 'rules' must be a list");
    c.rules.clear();
    for (const auto& r : rules) c.rules.push_back(scalar<std::string>(r, "rules"));
  }
  if (const auto ns = root["n_values"]) {
    if (!ns.IsSequence()) throw ValidationError("config key 'n_values' must be a list");
    c.n_values.clear();
    for (const auto& n : ns) c.n_values.push_back(scalar<std::uint64_t>(n, "n_values"));
  }
  if (root["trials"]) c.trials = scalar<std::uint64_t>(root["trials"], "trials");
  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["output"]) c.output = scalar<std::string>(root["output"], "output");

  if (c.hypotheses.size() < 2) throw ValidationError("config needs at least two hypotheses");
  if (c.alphabet_size == 0) c.alphabet_size = c.hypotheses.front().size();
  if (c.priors && c.priors->size() != c.hypotheses.size()) {
    throw ValidationError("priors and hypotheses differ in length");
  }
  if (c.nominals && c.quantizer_bits) {
    throw ValidationError("quantizer_bits derives the nominals; do not also list them");
  }
  if (c.nominals && c.nominals->size() != c.hypotheses.size()) {
    throw ValidationError("nominals and hypotheses differ in length");
  }
  if (c.epsilons && c.epsilons->size() != c.hypotheses.size()) {
    throw ValidationError("epsilons and hypotheses differ in length");
  }
  if (c.epsilons && !c.nominals && !c.quantizer_bits) {
    throw ValidationError("epsilons given without nominals or quantizer_bits");
  }
  for (const auto& r : c.rules) parse_rule(r);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ResolvedConfig resolve(const ExperimentConfig& config) {
  std::vector<Distribution> truth =
      distributions_of(config.hypotheses, config.alphabet_size, "hypothesis");
  std::vector<Distribution> nominals;
  if (config.quantizer_bits) {
    const QuantizerSpec spec{*config.quantizer_bits, 0.0};
    for (const Distribution& p : truth) nominals.push_back(quantize_distribution(p, spec));
  } else if (config.nominals) {
    nominals = distributions_of(*config.nominals, config.alphabet_size, "nominal");
  }

  std::optional<RobustModel> model;
  if (!nominals.empty()) {
    std::vector<double> eps = config.epsilons
                                  ? *config.epsilons
                                  : quantization_radius(truth, nominals).per_hypothesis;
    model = build_robust_model(nominals, std::move(eps));
  }

  HypothesisSet h = config.priors ? HypothesisSet(truth, *config.priors)
                                  : HypothesisSet::with_uniform_priors(truth);
  return {std::move(h), std::move(nominals), std::move(model)};
}

ExperimentPlan make_plan(const ExperimentConfig& config, const ResolvedConfig& resolved) {
  std::vector<Rule> rules;
  for (const auto& r : config.rules) rules.push_back(parse_rule(r));
  ExperimentPlan plan{resolved.truth, resolved.robust_model, std::move(rules), config.n_values,
                      config.trials,  config.seed,           0};
  validate(plan);
  return plan;
}

}  // namespace typexp::cli

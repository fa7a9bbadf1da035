#pragma once

// Experiment configuration files: flat YAML mappings whose keys are
//
//   alphabet_size, hypotheses, priors, nominals, epsilons, quantizer_bits,
//   rules, n_values, trials, seed, output
//
// hypotheses/nominals are lists of probability vectors; epsilons is a list of
// radii or the string "auto" (radius = V(P_j, Q_j)). quantizer_bits derives
// the nominals from the hypotheses and excludes an explicit nominals list.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typexp/decide.hpp"
#include "typexp/harness.hpp"
#include "typexp/robustify.hpp"

namespace typexp::cli {

struct ExperimentConfig {
  std::size_t alphabet_size = 0;
  std::vector<std::vector<double>> hypotheses;
  std::optional<std::vector<double>> priors;
  std::optional<std::vector<std::vector<double>>> nominals;
  /// Explicit radii; absent means "auto" whenever nominals exist.
  std::optional<std::vector<double>> epsilons;
  std::optional<int> quantizer_bits;
  std::vector<std::string> rules{"nn"};
  std::vector<std::uint64_t> n_values{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string output;
};

/// Parses YAML text. Throws ValidationError on unknown keys, malformed values
/// or inconsistent lengths.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws IoError when it cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Validated objects derived from a config.
struct ResolvedConfig {
  HypothesisSet truth;
  std::vector<Distribution> nominals;  // empty without nominals/quantizer
  std::optional<RobustModel> robust_model;
};

ResolvedConfig resolve(const ExperimentConfig& config);

/// Harness plan for the resolved config.
ExperimentPlan make_plan(const ExperimentConfig& config, const ResolvedConfig& resolved);

}  // namespace typexp::cli

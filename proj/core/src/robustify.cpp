#include "typexp/robustify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "typexp/error.hpp"

namespace typexp {

Distribution representative(const Distribution& nominal, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw ValidationError("robustness radius must be finite and non-negative");
  }
  if (epsilon == 0.0) return nominal;
  const double scale = 1.0 + static_cast<double>(nominal.alphabet_size()) * epsilon;
  std::vector<double> probs(nominal.alphabet_size());
  for (std::size_t x = 0; x < probs.size(); ++x) probs[x] = (nominal[x] + epsilon) / scale;
  return Distribution(std::move(probs));
}

RobustModel::RobustModel(std::vector<Distribution> nominals, std::vector<double> epsilons)
    : nominals_(std::move(nominals)), epsilons_(std::move(epsilons)) {
  if (nominals_.size() < 2) throw ValidationError("robust model needs at least two nominals");
  if (epsilons_.size() != nominals_.size()) {
    throw ValidationError("expected " + std::to_string(nominals_.size()) + " radii, got " +
                          std::to_string(epsilons_.size()));
  }
  representatives_.reserve(nominals_.size());
  for (std::size_t j = 0; j < nominals_.size(); ++j) {
    require_same_alphabet(nominals_.front(), nominals_[j]);
    representatives_.push_back(representative(nominals_[j], epsilons_[j]));
  }
  epsilon_max_ = *std::max_element(epsilons_.begin(), epsilons_.end());
}

RobustModel build_robust_model(std::vector<Distribution> nominals, std::vector<double> epsilons) {
  return RobustModel(std::move(nominals), std::move(epsilons));
}

double robust_sequence_log_bound(const TypeVector& t, const RobustModel& model, std::size_t j) {
  if (j >= model.size()) throw ValidationError("hypothesis index out of range");
  const Distribution& rep = model.representatives()[j];
  if (t.alphabet_size() != rep.alphabet_size()) {
    throw ValidationError("alphabet mismatch between type and model");
  }
  // -n (H(t) + D(t||rep)) collapses to sum_a N(a) log2 rep(a); rep has full
  // support whenever eps_j > 0.
  const double penalty =
      std::log2(1.0 + static_cast<double>(rep.alphabet_size()) * model.epsilons()[j]);
  return sequence_log_prob(t, rep) + static_cast<double>(t.n()) * penalty;
}

double robustness_penalty(const RobustModel& model) {
  return std::log2(1.0 + static_cast<double>(model.alphabet_size()) * model.epsilon_max());
}

ErrorBound robust_error_bound(const RobustModel& model, std::uint64_t n) {
  if (n < 1) throw ValidationError("sequence length must be positive");
  const double nd = static_cast<double>(n);
  const double k = static_cast<double>(model.alphabet_size());
  const double min_c = min_pairwise_chernoff(model.representatives()).value;
  const double exponent = min_c - robustness_penalty(model) - (k - 1.0) * std::log2(nd + 1.0) / nd -
                          std::log2(static_cast<double>(model.size())) / nd;
  return {exponent, -nd * exponent};
}

PositivityVerdict positivity_check(const RobustModel& model) {
  const double margin =
      min_pairwise_chernoff(model.representatives()).value - robustness_penalty(model);
  return {margin > 0.0, margin};
}

double dgl_exponent(std::span<const Distribution> nominals) {
  if (nominals.size() < 2) throw ValidationError("need at least two nominals");
  double best = kInfinity;
  for (std::size_t i = 0; i < nominals.size(); ++i) {
    for (std::size_t j = i + 1; j < nominals.size(); ++j) {
      const double v = variational_distance(nominals[i], nominals[j]);
      best = std::min(best, 0.5 * v * v / std::numbers::ln2);
    }
  }
  return best;
}

double training_bound(std::uint64_t m, double beta, std::size_t alphabet_size) {
  if (m < 1) throw ValidationError("training length must be positive");
  if (!(beta > 0.0)) throw ValidationError("divergence threshold must be positive");
  const double md = static_cast<double>(m);
  const double slack = static_cast<double>(alphabet_size) * std::log2(md + 1.0) / md;
  return std::clamp(std::exp2(-md * (beta - slack)), 0.0, 1.0);
}

Distribution nominal_from_training(const SymbolSequence& training) {
  return type_of(training).as_distribution();
}

}  // namespace typexp

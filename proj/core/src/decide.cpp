#include "typexp/decide.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "typexp/error.hpp"

namespace typexp {

HypothesisSet::HypothesisSet(std::vector<Distribution> distributions, std::vector<double> priors)
    : distributions_(std::move(distributions)), priors_(std::move(priors)) {
  if (distributions_.size() < 2) throw ValidationError("need at least two hypotheses");
  if (priors_.size() != distributions_.size()) {
    throw ValidationError("expected " + std::to_string(distributions_.size()) + " priors, got " +
                          std::to_string(priors_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < distributions_.size(); ++i) {
    require_same_alphabet(distributions_.front(), distributions_[i]);
    if (!std::isfinite(priors_[i]) || priors_[i] <= 0.0) {
      throw ValidationError("priors must be strictly positive");
    }
    sum += priors_[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) throw ValidationError("priors must sum to 1");
  for (double& p : priors_) p /= sum;
}

HypothesisSet HypothesisSet::with_uniform_priors(std::vector<Distribution> distributions) {
  const std::size_t m = distributions.size();
  return HypothesisSet(std::move(distributions),
                       std::vector<double>(m, 1.0 / static_cast<double>(std::max<std::size_t>(m, 1))));
}

std::size_t argmin_lowest(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best]) best = i;
  }
  return best;
}

std::size_t argmax_lowest(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

namespace {

Decision nearest_in_kl(std::span<const Distribution> centroids, const TypeVector& t) {
  if (t.alphabet_size() != centroids.front().alphabet_size()) {
    throw ValidationError("alphabet mismatch between observation and hypotheses");
  }
  const Distribution empirical = t.as_distribution();
  Decision d;
  d.scores.reserve(centroids.size());
  for (const Distribution& c : centroids) d.scores.push_back(kl_divergence(empirical, c));
  d.index = argmin_lowest(d.scores);
  return d;
}

struct ScheffeSet {
  std::size_t i;
  std::size_t j;
  std::vector<bool> members;
};

std::vector<ScheffeSet> scheffe_sets(std::span<const Distribution> nominals) {
  if (nominals.size() < 2) throw ValidationError("need at least two nominals");
  std::vector<ScheffeSet> sets;
  for (std::size_t i = 0; i < nominals.size(); ++i) {
    require_same_alphabet(nominals.front(), nominals[i]);
    for (std::size_t j = i + 1; j < nominals.size(); ++j) {
      ScheffeSet s{i, j, std::vector<bool>(nominals[i].alphabet_size())};
      for (std::size_t a = 0; a < s.members.size(); ++a) s.members[a] = nominals[i][a] > nominals[j][a];
      sets.push_back(std::move(s));
    }
  }
  return sets;
}

double mass(const Distribution& q, const std::vector<bool>& members) {
  double total = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (members[a]) total += q[a];
  }
  return total;
}

// Shared selector given the empirical count landing in each Scheffe set.
Decision select(std::span<const Distribution> nominals, const std::vector<ScheffeSet>& sets,
                std::span<const std::uint64_t> hits, std::uint64_t n, DglVariant variant,
                OpCounter* counter) {
  const double nd = static_cast<double>(n);
  const std::size_t m = nominals.size();
  Decision d;
  d.scores.assign(m, 0.0);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const double mu = static_cast<double>(hits[s]) / nd;
    if (variant == DglVariant::kTournament) {
      const double err_i = std::abs(mu - mass(nominals[sets[s].i], sets[s].members));
      const double err_j = std::abs(mu - mass(nominals[sets[s].j], sets[s].members));
      d.scores[err_i <= err_j ? sets[s].i : sets[s].j] += 1.0;
      if (counter) counter->ops += 2;
    } else {
      for (std::size_t k = 0; k < m; ++k) {
        d.scores[k] = std::max(d.scores[k], std::abs(mass(nominals[k], sets[s].members) - mu));
      }
      if (counter) counter->ops += m;
    }
  }
  if (counter) {
    // Final ranking of the M candidates.
    counter->ops += static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(m) * std::log2(static_cast<double>(m))));
  }
  d.index = variant == DglVariant::kTournament ? argmax_lowest(d.scores) : argmin_lowest(d.scores);
  return d;
}

}  // namespace

Decision nn_decide(const HypothesisSet& h, const TypeVector& t) {
  return nearest_in_kl(h.distributions(), t);
}

Decision nn_decide(const HypothesisSet& h, const SymbolSequence& x, OpCounter* counter) {
  if (counter) counter->ops += x.size() + h.size() * h.alphabet_size();
  return nn_decide(h, type_of(x));
}

Decision map_decide(const HypothesisSet& h, const TypeVector& t) {
  if (t.alphabet_size() != h.alphabet_size()) {
    throw ValidationError("alphabet mismatch between observation and hypotheses");
  }
  Decision d;
  d.scores.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    d.scores.push_back(std::log2(h.priors()[i]) + sequence_log_prob(t, h[i]));
  }
  d.index = argmax_lowest(d.scores);
  return d;
}

Decision map_decide(const HypothesisSet& h, const SymbolSequence& x) {
  return map_decide(h, type_of(x));
}

Decision robust_decide(const RobustModel& model, const TypeVector& t) {
  return nearest_in_kl(model.representatives(), t);
}

Decision robust_decide(const RobustModel& model, const SymbolSequence& x, OpCounter* counter) {
  if (counter) counter->ops += x.size() + model.size() * model.alphabet_size();
  return robust_decide(model, type_of(x));
}

std::string_view to_string(DglVariant variant) {
  return variant == DglVariant::kTournament ? "tournament" : "minimum-distance";
}

Decision dgl_decide(std::span<const Distribution> nominals, const TypeVector& t,
                    DglVariant variant) {
  const auto sets = scheffe_sets(nominals);
  if (t.alphabet_size() != nominals.front().alphabet_size()) {
    throw ValidationError("alphabet mismatch between observation and nominals");
  }
  std::vector<std::uint64_t> hits(sets.size(), 0);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t a = 0; a < t.alphabet_size(); ++a) {
      if (sets[s].members[a]) hits[s] += t[a];
    }
  }
  return select(nominals, sets, hits, t.n(), variant, nullptr);
}

Decision dgl_decide(std::span<const Distribution> nominals, const SymbolSequence& x,
                    DglVariant variant, OpCounter* counter) {
  const auto sets = scheffe_sets(nominals);
  if (x.alphabet_size() != nominals.front().alphabet_size()) {
    throw ValidationError("alphabet mismatch between observation and nominals");
  }
  if (x.empty()) throw ValidationError("empty observation");
  std::vector<std::uint64_t> hits(sets.size(), 0);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (Symbol sym : x.symbols()) hits[s] += sets[s].members[sym] ? 1 : 0;
    if (counter) counter->ops += x.size();
  }
  return select(nominals, sets, hits, x.size(), variant, counter);
}

}  // namespace typexp

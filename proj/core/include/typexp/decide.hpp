#pragma once

// Decision rules for M-ary hypothesis testing over a finite alphabet.
// Hypothesis indices are zero-based. Every rule breaks ties toward the
// lowest index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "typexp/robustify.hpp"
#include "typexp/simplex.hpp"
#include "typexp/types.hpp"

namespace typexp {

/// M >= 2 distributions on one alphabet with strictly positive priors.
class HypothesisSet {
 public:
  HypothesisSet(std::vector<Distribution> distributions, std::vector<double> priors);

  /// Equal priors 1/M.
  static HypothesisSet with_uniform_priors(std::vector<Distribution> distributions);

  std::size_t size() const { return distributions_.size(); }
  std::size_t alphabet_size() const { return distributions_.front().alphabet_size(); }
  std::span<const Distribution> distributions() const { return distributions_; }
  const Distribution& operator[](std::size_t i) const { return distributions_[i]; }
  std::span<const double> priors() const { return priors_; }

 private:
  std::vector<Distribution> distributions_;
  std::vector<double> priors_;
};

struct Decision {
  std::size_t index = 0;
  /// The per-hypothesis statistic the rule minimized or maximized.
  std::vector<double> scores;
};

/// Counts elementary steps (symbol visits, score updates) for complexity checks.
struct OpCounter {
  std::uint64_t ops = 0;
};

/// Index of the smallest score; lowest index on ties, 0 when all are +inf.
std::size_t argmin_lowest(std::span<const double> scores);
/// Index of the largest score; lowest index on ties.
std::size_t argmax_lowest(std::span<const double> scores);

/// Nearest neighbour in KL divergence: argmin_j D(t || P_j).
Decision nn_decide(const HypothesisSet& h, const TypeVector& t);
/// Same rule from the raw sequence; counts the type pass plus one score per hypothesis.
Decision nn_decide(const HypothesisSet& h, const SymbolSequence& x, OpCounter* counter = nullptr);

/// Exact maximum a posteriori rule in the log domain:
/// argmax_i log2 prior_i + log2 P_i(x).
Decision map_decide(const HypothesisSet& h, const SymbolSequence& x);
Decision map_decide(const HypothesisSet& h, const TypeVector& t);

/// Nearest neighbour against the robust representatives.
Decision robust_decide(const RobustModel& model, const TypeVector& t);
Decision robust_decide(const RobustModel& model, const SymbolSequence& x,
                       OpCounter* counter = nullptr);

/// Scheffe-set selectors built from the nominal distributions. For each pair
/// i < j the Scheffe set is A_ij = {a : Q_i(a) > Q_j(a)} and mu(A) is the
/// empirical mass the observation puts on A.
enum class DglVariant {
  /// Minimum-distance estimate: score_k = max over all A_ij of
  /// |Q_k(A_ij) - mu(A_ij)|, decision = argmin score.
  kMinimumDistance,
  /// Pairwise tournament: i beats j iff |mu(A_ij) - Q_i(A_ij)| <
  /// |mu(A_ij) - Q_j(A_ij)| (ties to i); decision = most wins.
  kTournament,
};

std::string_view to_string(DglVariant variant);

Decision dgl_decide(std::span<const Distribution> nominals, const TypeVector& t,
                    DglVariant variant);
/// Scans the sequence once per Scheffe set, as the selector is usually stated.
Decision dgl_decide(std::span<const Distribution> nominals, const SymbolSequence& x,
                    DglVariant variant, OpCounter* counter = nullptr);

}  // namespace typexp

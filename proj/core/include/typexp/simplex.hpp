#pragma once

// Probability vectors over a finite alphabet and the distances between them.
// Every information quantity is in bits. Infinite results use IEEE +inf,
// which orders above all finite values and prints as "inf".

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace typexp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tolerance on |sum - 1| accepted when constructing a Distribution.
inline constexpr double kSumTolerance = 1e-9;

/// A probability vector over the index alphabet {0, ..., alphabet_size-1}.
///
/// Construction validates the entries (finite, non-negative, at least two
/// symbols, sum within kSumTolerance of 1) and renormalizes once. Instances
/// are immutable afterwards.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t alphabet_size);

  std::size_t alphabet_size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t symbol) const { return probs_[symbol]; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> probs_;
};

/// Throws ValidationError when the two alphabets differ.
void require_same_alphabet(const Distribution& p, const Distribution& q);

double entropy(const Distribution& p);

/// Half the L1 distance.
double variational_distance(const Distribution& p, const Distribution& q);

/// D(p || q); +inf when p puts mass where q does not.
double kl_divergence(const Distribution& p, const Distribution& q);

/// Normalized geometric mixture p^lambda q^(1-lambda), with 0^0 = 1.
/// Throws DegenerateTilt when the mixture vanishes everywhere.
Distribution tilted(const Distribution& p, const Distribution& q, double lambda);

struct ChernoffResult {
  double value = 0.0;
  double lambda_star = 0.5;
};

/// log2 sum_x p(x)^lambda q(x)^(1-lambda), the function minimized by
/// chernoff_information. Exposed for oracles and diagnostics.
double chernoff_objective(const Distribution& p, const Distribution& q, double lambda);

/// C(p, q) = -min over lambda in [0,1] of chernoff_objective, found by
/// golden-section search and checked against both endpoints.
/// Disjoint supports give +inf.
ChernoffResult chernoff_information(const Distribution& p, const Distribution& q);

/// -1/2 ln(1 - V^2) expressed in bits; a lower bound on chernoff_information.
double sason_lower_bound(const Distribution& p, const Distribution& q);

struct PairwiseChernoff {
  double value = kInfinity;
  double lambda_star = 0.5;
  std::size_t first = 0;
  std::size_t second = 1;
};

/// Minimum of C over all unordered pairs of distinct indices; the first
/// minimizing pair in (i, j) order wins ties.
PairwiseChernoff min_pairwise_chernoff(std::span<const Distribution> distributions);

}  // namespace typexp

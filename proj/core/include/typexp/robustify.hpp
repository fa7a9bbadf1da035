#pragma once

// Robust testing against nominal distributions known only up to a
// variational-distance radius. Each nominal Q_j with radius eps_j is replaced
// by a representative shrunk toward the uniform distribution,
//
//     rep_j(x) = (Q_j(x) + eps_j) / (1 + |X| eps_j),
//
// and the test is nearest-neighbour in KL divergence against the
// representatives. The functions below evaluate the probability and
// error-probability bounds that hold for every true distribution inside the
// radius.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "typexp/simplex.hpp"
#include "typexp/types.hpp"

namespace typexp {

class RobustModel {
 public:
  /// Throws ValidationError for fewer than two nominals, mismatched lengths
  /// or alphabets, and negative or non-finite radii.
  RobustModel(std::vector<Distribution> nominals, std::vector<double> epsilons);

  std::size_t size() const { return nominals_.size(); }
  std::size_t alphabet_size() const { return nominals_.front().alphabet_size(); }

  std::span<const Distribution> nominals() const { return nominals_; }
  std::span<const double> epsilons() const { return epsilons_; }
  std::span<const Distribution> representatives() const { return representatives_; }
  /// Largest radius over all hypotheses.
  double epsilon_max() const { return epsilon_max_; }

 private:
  std::vector<Distribution> nominals_;
  std::vector<double> epsilons_;
  std::vector<Distribution> representatives_;
  double epsilon_max_ = 0.0;
};

RobustModel build_robust_model(std::vector<Distribution> nominals, std::vector<double> epsilons);

/// The shrinkage toward uniform for a single nominal.
Distribution representative(const Distribution& nominal, double epsilon);

/// Upper bound on log2 P(x) for any x of type t and any P within eps_j of
/// Q_j: -n (H(t) + D(t || rep_j) - log2(1 + |X| eps_j)).
double robust_sequence_log_bound(const TypeVector& t, const RobustModel& model, std::size_t j);

struct ErrorBound {
  /// Exponent of the bound, in bits per symbol; may be negative.
  double exponent = 0.0;
  /// log2 of the bound on P(e), i.e. -n * exponent.
  double log2_bound = 0.0;
};

/// P(e) <= 2^(-n E) with
/// E = min C(rep_i, rep_j) - log2(1 + |X| eps) - (|X|-1) log2(n+1)/n - log2(M)/n.
ErrorBound robust_error_bound(const RobustModel& model, std::uint64_t n);

struct PositivityVerdict {
  bool positive = false;
  /// min C(rep_i, rep_j) - log2(1 + |X| eps).
  double margin = 0.0;
};

/// Whether the asymptotic exponent of robust_error_bound is positive.
PositivityVerdict positivity_check(const RobustModel& model);

/// log2(1 + |X| eps_max), the exponent penalty paid for the uncertainty.
double robustness_penalty(const RobustModel& model);

/// min over distinct pairs of V(Q_i, Q_j)^2 / 2, converted from nats to bits.
double dgl_exponent(std::span<const Distribution> nominals);

/// Bound on Pr(D(type of m training symbols || P) > beta):
/// 2^(-m (beta - |X| log2(m+1)/m)), clamped to [0, 1].
double training_bound(std::uint64_t m, double beta, std::size_t alphabet_size);

/// Empirical type of a training sequence, used as a nominal distribution.
Distribution nominal_from_training(const SymbolSequence& training);

}  // namespace typexp

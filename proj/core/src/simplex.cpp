#include "typexp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "typexp/error.hpp"

namespace typexp {
namespace {

// b^e with 0^0 = 1.
double power_or_one(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (base == 0.0) return 0.0;
  return std::pow(base, exponent);
}

double golden_section_min(const Distribution& p, const Distribution& q, double& arg_min) {
  constexpr double kInvPhi = 0.6180339887498948482;
  constexpr double kIntervalTolerance = 1e-10;

  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = chernoff_objective(p, q, x1);
  double f2 = chernoff_objective(p, q, x2);
  while (hi - lo > kIntervalTolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = chernoff_objective(p, q, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = chernoff_objective(p, q, x2);
    }
  }
  if (f1 <= f2) {
    arg_min = x1;
    return f1;
  }
  arg_min = x2;
  return f2;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw ValidationError("distribution needs at least two symbols, got " +
                          std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (double v : probs_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("probability entries must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
  if (sum != 1.0) {
    for (double& v : probs_) v /= sum;
  }
}

Distribution Distribution::uniform(std::size_t alphabet_size) {
  return Distribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

void require_same_alphabet(const Distribution& p, const Distribution& q) {
  if (p.alphabet_size() != q.alphabet_size()) {
    throw ValidationError("alphabet mismatch: " + std::to_string(p.alphabet_size()) + " vs " +
                          std::to_string(q.alphabet_size()));
  }
}

double entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return std::clamp(h, 0.0, std::log2(static_cast<double>(p.alphabet_size())));
}

double variational_distance(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q);
  double l1 = 0.0;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) l1 += std::abs(q[x] - p[x]);
  return std::min(0.5 * l1, 1.0);
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q);
  double d = 0.0;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) return kInfinity;
    d += p[x] * std::log2(p[x] / q[x]);
  }
  return std::max(d, 0.0);
}

Distribution tilted(const Distribution& p, const Distribution& q, double lambda) {
  require_same_alphabet(p, q);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ValidationError("tilt parameter must lie in [0, 1]");
  }
  std::vector<double> w(p.alphabet_size());
  double total = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    w[x] = power_or_one(p[x], lambda) * power_or_one(q[x], 1.0 - lambda);
    total += w[x];
  }
  if (total <= 0.0) {
    throw DegenerateTilt("tilted distribution undefined: supports do not intersect");
  }
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

double chernoff_objective(const Distribution& p, const Distribution& q, double lambda) {
  require_same_alphabet(p, q);
  double total = 0.0;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
    total += power_or_one(p[x], lambda) * power_or_one(q[x], 1.0 - lambda);
  }
  return std::log2(total);
}

ChernoffResult chernoff_information(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q);
  bool overlap = false;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
    if (p[x] > 0.0 && q[x] > 0.0) {
      overlap = true;
      break;
    }
  }
  if (!overlap) return {kInfinity, 0.5};
  // Rounding in the mixture sum would otherwise leave a residue of a few ulp.
  if (p == q) return {0.0, 0.5};

  double lambda = 0.5;
  double best = golden_section_min(p, q, lambda);
  // Endpoints evaluate to log2(1) = 0 under the 0^0 = 1 convention.
  for (double end : {0.0, 1.0}) {
    double f = chernoff_objective(p, q, end);
    if (f < best) {
      best = f;
      lambda = end;
    }
  }
  return {std::max(-best, 0.0), lambda};
}

double sason_lower_bound(const Distribution& p, const Distribution& q) {
  double v = variational_distance(p, q);
  if (v >= 1.0) return kInfinity;
  return -0.5 * std::log1p(-v * v) / std::numbers::ln2;
}

PairwiseChernoff min_pairwise_chernoff(std::span<const Distribution> distributions) {
  if (distributions.size() < 2) {
    throw ValidationError("pairwise Chernoff information needs at least two distributions");
  }
  PairwiseChernoff best;
  bool first = true;
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    for (std::size_t j = i + 1; j < distributions.size(); ++j) {
      ChernoffResult c = chernoff_information(distributions[i], distributions[j]);
      if (first || c.value < best.value) {
        best = {c.value, c.lambda_star, i, j};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace typexp

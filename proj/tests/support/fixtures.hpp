#pragma once

// Shared inputs and brute-force oracles for the unit and acceptance tests.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "typexp/decide.hpp"
#include "typexp/random.hpp"
#include "typexp/robustify.hpp"
#include "typexp/simplex.hpp"
#include "typexp/types.hpp"

namespace typexp::testing {

/// The five ternary hypotheses used by every reproduction experiment.
inline std::vector<Distribution> ternary_set() {
  return {Distribution({0.1, 0.8, 0.1}), Distribution({0.3, 0.2, 0.5}),
          Distribution({0.6, 0.1, 0.3}), Distribution({0.4, 0.4, 0.2}),
          Distribution({0.3, 0.6, 0.1})};
}

/// Nominal sets at radius 0.1, 0.03 and 0.005 around ternary_set().
inline std::vector<Distribution> nominals_eps01() {
  return {Distribution({0.04, 0.76, 0.2}), Distribution({0.24, 0.3, 0.46}),
          Distribution({0.7, 0.05, 0.25}), Distribution({0.37, 0.5, 0.13}),
          Distribution({0.34, 0.5, 0.16})};
}

inline std::vector<Distribution> nominals_eps003() {
  return {Distribution({0.11, 0.82, 0.07}), Distribution({0.29, 0.23, 0.48}),
          Distribution({0.63, 0.09, 0.28}), Distribution({0.38, 0.43, 0.19}),
          Distribution({0.32, 0.57, 0.11})};
}

inline std::vector<Distribution> nominals_eps0005() {
  return {Distribution({0.102, 0.803, 0.095}), Distribution({0.305, 0.198, 0.497}),
          Distribution({0.599, 0.096, 0.305}), Distribution({0.398, 0.397, 0.205}),
          Distribution({0.305, 0.599, 0.096})};
}

/// Reference quantized nominals of ternary_set() at 2, 4, 6, 8 and 10 bits,
/// as printed to four decimals.
struct QuantizedRow {
  int bits;
  std::vector<std::vector<double>> nominals;
};

inline std::vector<QuantizedRow> quantized_reference() {
  return {
      {2, {{0, 0.7500, 0.2500}, {0.2500, 0.2500, 0.5000}, {0.5000, 0, 0.5000},
           {0.5000, 0.5000, 0}, {0.2500, 0.5000, 0.2500}}},
      {4, {{0.1250, 0.8125, 0.0625}, {0.3125, 0.1875, 0.5000}, {0.6250, 0.1250, 0.2500},
           {0.3750, 0.3750, 0.2500}, {0.3125, 0.6250, 0.0625}}},
      {6, {{0.0938, 0.7969, 0.1094}, {0.2969, 0.2031, 0.5000}, {0.5938, 0.0938, 0.3125},
           {0.4062, 0.4062, 0.1875}, {0.2969, 0.5938, 0.1094}}},
      {8, {{0.1016, 0.8008, 0.0977}, {0.3008, 0.1992, 0.5000}, {0.6016, 0.1016, 0.2969},
           {0.3984, 0.3984, 0.2031}, {0.3008, 0.6016, 0.0977}}},
      {10, {{0.0996, 0.7998, 0.1006}, {0.2998, 0.2002, 0.5000}, {0.5996, 0.0996, 0.3008},
            {0.4004, 0.4004, 0.1992}, {0.2998, 0.5996, 0.1006}}},
  };
}

/// Four-decimal rendering used to compare against quantized_reference().
inline std::string four_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

/// Uniform draw from the simplex, optionally with some coordinates zeroed.
inline Distribution random_distribution(std::mt19937_64& gen, std::size_t k,
                                        double zero_chance = 0.0) {
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> w(k);
    double s = 0.0;
    for (auto& x : w) {
      x = u(gen) < zero_chance ? 0.0 : e(gen);
      s += x;
    }
    if (s <= 0.0) continue;
    for (auto& x : w) x /= s;
    return Distribution(std::move(w));
  }
}

/// Perturbs q by a random signed direction, rescaled until it lies within
/// radius eps in variational distance. Rejects anything off the simplex.
inline Distribution perturb_within(const Distribution& q, double eps, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t k = q.alphabet_size();
  for (;;) {
    std::vector<double> d(k);
    double mean = 0.0;
    for (auto& x : d) mean += (x = g(gen));
    mean /= static_cast<double>(k);
    double l1 = 0.0;
    for (auto& x : d) l1 += std::abs(x -= mean);
    if (l1 == 0.0) continue;
    const double radius = eps * u(gen);
    std::vector<double> p(k);
    bool ok = true;
    for (std::size_t a = 0; a < k; ++a) {
      p[a] = q[a] + 2.0 * radius * d[a] / l1;
      ok = ok && p[a] >= 0.0;
    }
    if (!ok) continue;
    double s = 0.0;
    for (double x : p) s += x;
    for (auto& x : p) x /= s;
    Distribution out(std::move(p));
    if (variational_distance(out, q) <= eps) return out;
  }
}

/// A random type of length n drawn as the counts of n uniform symbols.
inline TypeVector random_type(std::mt19937_64& gen, std::uint64_t n, std::size_t k) {
  std::vector<Count> c(k, 0);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (std::uint64_t i = 0; i < n; ++i) ++c[pick(gen)];
  return TypeVector(std::move(c));
}

/// Chernoff information by dense grid search over lambda.
inline double chernoff_by_grid(const Distribution& p, const Distribution& q, std::size_t points) {
  double best = kInfinity;
  for (std::size_t i = 0; i <= points; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(points);
    double s = 0.0;
    for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
      s += std::pow(p[a], lambda) * std::pow(q[a], 1.0 - lambda);
    }
    best = std::min(best, std::log2(s));
  }
  return -best;
}

/// A member sequence of type t: each symbol repeated counts[a] times.
inline SymbolSequence member_sequence(const TypeVector& t) {
  std::vector<Symbol> s;
  for (std::size_t a = 0; a < t.alphabet_size(); ++a) s.insert(s.end(), t[a], static_cast<Symbol>(a));
  return SymbolSequence(std::move(s), t.alphabet_size());
}

/// Exact Bayesian error probability of a type-based rule, summed over the
/// type lattice: sum_i prior_i sum_t |T(t)| P_i(x_t) [decide(t) != i].
template <typename Decide>
double exact_error_probability(const HypothesisSet& h, std::uint64_t n, Decide&& decide) {
  double pe = 0.0;
  for (const TypeVector& t : enumerate_types(n, h.alphabet_size())) {
    const std::size_t d = decide(t);
    const double log2_size = type_class_size(t).log2_size;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (i == d) continue;
      const double lp = sequence_log_prob(t, h[i]);
      if (lp == -kInfinity) continue;
      pe += h.priors()[i] * std::exp2(log2_size + lp);
    }
  }
  return pe;
}

}  // namespace typexp::testing

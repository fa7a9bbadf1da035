#pragma once

// Error-exponent calculators for the nearest-neighbour test: the classical
// bound through the minimum pairwise Chernoff information, the per-type
// exponent min_{i != j} max{D(t||P_i), D(t||P_j)}, its minimum over the
// type lattice, and the sorted per-type ratio curve.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "typexp/decide.hpp"
#include "typexp/robustify.hpp"
#include "typexp/types.hpp"

namespace typexp {

/// P(e) <= 2^(-n E), E = min C(P_i, P_j) - (|X|-1) log2(n+1)/n - log2(M)/n.
ErrorBound classical_bound(const HypothesisSet& h, std::uint64_t n);

/// min over pairs i != j of max{D(t||P_i), D(t||P_j)}. The probability of
/// error averaged over the class of t is at most 2^(-n (value - log2(M)/n)).
double per_type_exponent(const HypothesisSet& h, const TypeVector& t);

struct TypeMinimum {
  double value = kInfinity;
  TypeVector argmin;
};

/// Minimum of max{D(t||P_i), D(t||P_j)} over every type of length n; the
/// first minimizer in enumeration order is reported.
TypeMinimum min_over_types(const HypothesisSet& h, std::uint64_t n,
                           std::pair<std::size_t, std::size_t> pair);

struct RatioPoint {
  TypeVector type;
  double ratio = 0.0;
};

/// per_type_exponent(t) / min C(P_i, P_j) for every type of length n, sorted
/// ascending (stable with respect to enumeration order).
/// Throws DegenerateRatio when the minimum Chernoff information is zero.
std::vector<RatioPoint> ratio_curve(const HypothesisSet& h, std::uint64_t n);

/// CSV with header `rank,counts,ratio`; counts are '|'-joined, rank starts at 1.
void write_ratio_curve_csv(std::ostream& out, const std::vector<RatioPoint>& curve);

struct ExponentReport {
  double classical_exponent = 0.0;
  /// (type, per-type exponent) in enumeration order.
  std::vector<std::pair<TypeVector, double>> per_type_exponents;
  double min_chernoff = 0.0;
  std::pair<std::size_t, std::size_t> pair_argmin{0, 1};
};

ExponentReport exponent_report(const HypothesisSet& h, std::uint64_t n);

}  // namespace typexp

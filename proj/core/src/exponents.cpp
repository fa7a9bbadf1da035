#include "typexp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "typexp/error.hpp"
#include "typexp/format.hpp"

namespace typexp {
namespace {

void require_alphabet(const HypothesisSet& h, const TypeVector& t) {
  if (t.alphabet_size() != h.alphabet_size()) {
    throw ValidationError("alphabet mismatch between type and hypotheses");
  }
}

}  // namespace

ErrorBound classical_bound(const HypothesisSet& h, std::uint64_t n) {
  if (n < 1) throw ValidationError("sequence length must be positive");
  const double nd = static_cast<double>(n);
  const double k = static_cast<double>(h.alphabet_size());
  const double min_c = min_pairwise_chernoff(h.distributions()).value;
  const double exponent = min_c - (k - 1.0) * std::log2(nd + 1.0) / nd -
                          std::log2(static_cast<double>(h.size())) / nd;
  return {exponent, -nd * exponent};
}

double per_type_exponent(const HypothesisSet& h, const TypeVector& t) {
  require_alphabet(h, t);
  const Distribution empirical = t.as_distribution();
  std::vector<double> d;
  d.reserve(h.size());
  for (const Distribution& p : h.distributions()) d.push_back(kl_divergence(empirical, p));
  double best = kInfinity;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) best = std::min(best, std::max(d[i], d[j]));
  }
  return best;
}

TypeMinimum min_over_types(const HypothesisSet& h, std::uint64_t n,
                           std::pair<std::size_t, std::size_t> pair) {
  const auto [i, j] = pair;
  if (i >= h.size() || j >= h.size() || i == j) {
    throw ValidationError("pair must name two distinct hypotheses");
  }
  std::optional<TypeMinimum> best;
  for (const TypeVector& t : enumerate_types(n, h.alphabet_size())) {
    const Distribution empirical = t.as_distribution();
    const double v = std::max(kl_divergence(empirical, h[i]), kl_divergence(empirical, h[j]));
    if (!best || v < best->value) best = TypeMinimum{v, t};
  }
  return *best;
}

std::vector<RatioPoint> ratio_curve(const HypothesisSet& h, std::uint64_t n) {
  const TypeRange types = enumerate_types(n, h.alphabet_size());
  const double min_c = min_pairwise_chernoff(h.distributions()).value;
  if (!(min_c > 0.0)) {
    throw DegenerateRatio("minimum pairwise Chernoff information is zero");
  }
  std::vector<RatioPoint> curve;
  curve.reserve(types.size());
  for (const TypeVector& t : types) curve.push_back({t, per_type_exponent(h, t) / min_c});
  std::stable_sort(curve.begin(), curve.end(),
                   [](const RatioPoint& a, const RatioPoint& b) { return a.ratio < b.ratio; });
  return curve;
}

void write_ratio_curve_csv(std::ostream& out, const std::vector<RatioPoint>& curve) {
  out << "rank,counts,ratio\n";
  for (std::size_t r = 0; r < curve.size(); ++r) {
    out << (r + 1) << ',';
    const auto counts = curve[r].type.counts();
    for (std::size_t a = 0; a < counts.size(); ++a) out << (a ? "|" : "") << counts[a];
    out << ',' << format_real(curve[r].ratio) << '\n';
  }
}

ExponentReport exponent_report(const HypothesisSet& h, std::uint64_t n) {
  ExponentReport report;
  const PairwiseChernoff pc = min_pairwise_chernoff(h.distributions());
  report.min_chernoff = pc.value;
  report.pair_argmin = {pc.first, pc.second};
  report.classical_exponent = classical_bound(h, n).exponent;
  for (const TypeVector& t : enumerate_types(n, h.alphabet_size())) {
    report.per_type_exponents.emplace_back(t, per_type_exponent(h, t));
  }
  return report;
}

}  // namespace typexp

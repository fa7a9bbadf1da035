#include "typexp/types.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "typexp/error.hpp"

namespace typexp {

SymbolSequence::SymbolSequence(std::vector<Symbol> symbols, std::size_t alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 2) throw ValidationError("alphabet needs at least two symbols");
  for (Symbol s : symbols_) {
    if (s >= alphabet_size_) {
      throw ValidationError("symbol " + std::to_string(s) + " outside alphabet of size " +
                            std::to_string(alphabet_size_));
    }
  }
}

TypeVector::TypeVector(std::vector<Count> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw ValidationError("type vector needs at least two symbols");
  n_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  if (n_ == 0) throw ValidationError("type vector of an empty sequence");
}

Distribution TypeVector::as_distribution() const {
  std::vector<double> probs(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) probs[a] = frequency(a);
  return Distribution(std::move(probs));
}

TypeVector type_of(const SymbolSequence& x) {
  if (x.empty()) throw ValidationError("type of an empty sequence");
  std::vector<Count> counts(x.alphabet_size(), 0);
  for (Symbol s : x.symbols()) ++counts[s];
  return TypeVector(std::move(counts));
}

std::uint64_t type_class_count(std::uint64_t n, std::size_t alphabet_size) {
  if (n < 1) throw ValidationError("sequence length must be positive");
  if (alphabet_size < 2) throw ValidationError("alphabet needs at least two symbols");
  // binomial(n + k - 1, k - 1) built up as a product of exact partial binomials.
  const std::uint64_t k = alphabet_size - 1;
  std::uint64_t value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const bool wraps = n + i < n || value > std::numeric_limits<std::uint64_t>::max() / (n + i);
    if (!wraps) value = value * (n + i) / i;
    if (wraps || value > kMaxTypeClasses) {
      throw EnumerationOverflow("more than " + std::to_string(kMaxTypeClasses) +
                                " type classes for n=" + std::to_string(n) +
                                ", |X|=" + std::to_string(alphabet_size));
    }
  }
  return value;
}

TypeRange::TypeRange(std::uint64_t n, std::size_t alphabet_size)
    : n_(n), alphabet_size_(alphabet_size), count_(type_class_count(n, alphabet_size)) {
  if (n > std::numeric_limits<Count>::max()) {
    throw EnumerationOverflow("sequence length exceeds count range");
  }
}

TypeRange::iterator TypeRange::begin() const {
  iterator it;
  it.current_.counts_.assign(alphabet_size_, 0);
  it.current_.counts_[0] = static_cast<Count>(n_);
  it.current_.n_ = n_;
  it.done_ = false;
  return it;
}

TypeRange::iterator& TypeRange::iterator::operator++() {
  auto& c = current_.counts_;
  const std::size_t k = c.size();
  // Rightmost position before the last that can give one unit to its right.
  std::size_t i = k - 1;
  while (i > 0 && c[i - 1] == 0) --i;
  if (i == 0) {
    done_ = true;
    return *this;
  }
  --i;
  Count tail = 0;
  for (std::size_t j = i + 1; j < k; ++j) {
    tail += c[j];
    c[j] = 0;
  }
  --c[i];
  c[i + 1] = tail + 1;
  return *this;
}

TypeRange enumerate_types(std::uint64_t n, std::size_t alphabet_size) {
  return TypeRange(n, alphabet_size);
}

TypeClassSize type_class_size(const TypeVector& t) {
  TypeClassSize out;
  double log_e = std::lgamma(static_cast<double>(t.n()) + 1.0);
  for (Count c : t.counts()) log_e -= std::lgamma(static_cast<double>(c) + 1.0);
  out.log2_size = std::max(log_e / std::numbers::ln2, 0.0);

  if (t.n() <= kExactMultinomialLimit) {
    using boost::multiprecision::cpp_int;
    // Product of binomials: choose positions for symbol 0, then symbol 1, ...
    cpp_int size = 1;
    std::uint64_t placed = 0;
    for (Count c : t.counts()) {
      for (Count i = 1; i <= c; ++i) {
        size *= placed + i;
        size /= i;
      }
      placed += c;
    }
    out.exact = size;
    if (t.n() <= 60) out.log2_size = std::log2(static_cast<double>(size));
  }
  return out;
}

double sequence_log_prob(const TypeVector& t, const Distribution& p) {
  if (t.alphabet_size() != p.alphabet_size()) {
    throw ValidationError("alphabet mismatch between type and distribution");
  }
  double total = 0.0;
  for (std::size_t a = 0; a < t.alphabet_size(); ++a) {
    if (t[a] == 0) continue;
    if (p[a] == 0.0) return -kInfinity;
    total += static_cast<double>(t[a]) * std::log2(p[a]);
  }
  return total;
}

std::vector<double> cumulative(const Distribution& p) {
  std::vector<double> cdf(p.alphabet_size());
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t a = 0; a < cdf.size(); ++a) {
    running += p[a];
    cdf[a] = running;
    if (p[a] > 0.0) last_positive = a;
  }
  for (std::size_t a = last_positive; a < cdf.size(); ++a) cdf[a] = 1.0;
  return cdf;
}

Symbol sample_symbol(std::span<const double> cdf, RandomStream& rng) {
  const double u = rng.uniform();
  Symbol a = 0;
  while (u >= cdf[a]) ++a;
  return a;
}

SymbolSequence sample_sequence(const Distribution& p, std::size_t n, RandomStream& rng) {
  if (n < 1) throw ValidationError("sequence length must be positive");
  const std::vector<double> cdf = cumulative(p);
  std::vector<Symbol> symbols(n);
  for (Symbol& s : symbols) s = sample_symbol(cdf, rng);
  return SymbolSequence(std::move(symbols), p.alphabet_size());
}

TypeVector sample_type(const Distribution& p, std::size_t n, RandomStream& rng) {
  if (n < 1) throw ValidationError("sequence length must be positive");
  const std::vector<double> cdf = cumulative(p);
  std::vector<Count> counts(p.alphabet_size(), 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[sample_symbol(cdf, rng)];
  return TypeVector(std::move(counts));
}

}  // namespace typexp

#pragma once

// Method-of-types primitives: empirical types of sequences, enumeration of
// all type classes for a given length, class sizes and the per-sequence
// probability shared by every member of a class.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "typexp/random.hpp"
#include "typexp/simplex.hpp"

namespace typexp {

using Symbol = std::uint32_t;
using Count = std::uint32_t;

/// Hard cap on the number of type classes any enumeration may visit.
inline constexpr std::uint64_t kMaxTypeClasses = 1'000'000'000ULL;

/// Largest n for which type_class_size reports an exact multinomial.
inline constexpr std::uint64_t kExactMultinomialLimit = 170;

class SymbolSequence {
 public:
  SymbolSequence(std::vector<Symbol> symbols, std::size_t alphabet_size);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

 private:
  std::vector<Symbol> symbols_;
  std::size_t alphabet_size_;
};

/// Occurrence counts of each symbol in a length-n sequence.
class TypeVector {
 public:
  /// n is the sum of counts and must be positive.
  explicit TypeVector(std::vector<Count> counts);

  std::size_t alphabet_size() const { return counts_.size(); }
  std::uint64_t n() const { return n_; }
  std::span<const Count> counts() const { return counts_; }
  Count operator[](std::size_t symbol) const { return counts_[symbol]; }

  /// Empirical frequency of one symbol, counts[a] / n.
  double frequency(std::size_t symbol) const {
    return static_cast<double>(counts_[symbol]) / static_cast<double>(n_);
  }
  Distribution as_distribution() const;

  auto operator<=>(const TypeVector&) const = default;

 private:
  friend class TypeRange;
  TypeVector() = default;

  std::vector<Count> counts_;
  std::uint64_t n_ = 0;
};

TypeVector type_of(const SymbolSequence& x);

/// binomial(n + k - 1, k - 1): the number of type classes of length-n
/// sequences over k symbols. Throws EnumerationOverflow above kMaxTypeClasses.
std::uint64_t type_class_count(std::uint64_t n, std::size_t alphabet_size);

/// Every composition of n into alphabet_size parts, each once, in descending
/// lexicographic order of the count vector: [n,0,..,0] first, [0,..,0,n] last.
/// Single pass; the iterator owns the current type.
class TypeRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = TypeVector;
    using difference_type = std::ptrdiff_t;
    using reference = const TypeVector&;
    using pointer = const TypeVector*;

    iterator() = default;

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    friend class TypeRange;
    TypeVector current_;
    bool done_ = true;
  };

  TypeRange(std::uint64_t n, std::size_t alphabet_size);

  iterator begin() const;
  std::default_sentinel_t end() const { return {}; }

  std::uint64_t size() const { return count_; }

 private:
  std::uint64_t n_;
  std::size_t alphabet_size_;
  std::uint64_t count_;
};

/// Validates (n >= 1, alphabet_size >= 2, count within kMaxTypeClasses) and
/// returns the lazy enumeration.
TypeRange enumerate_types(std::uint64_t n, std::size_t alphabet_size);

struct TypeClassSize {
  /// n! / prod counts[a]!, present when n <= kExactMultinomialLimit.
  std::optional<boost::multiprecision::cpp_int> exact;
  double log2_size = 0.0;
};

TypeClassSize type_class_size(const TypeVector& t);

/// log2 of the probability of any single sequence of type t under i.i.d. p:
/// sum_a counts[a] log2 p(a). -inf when t uses a symbol p never emits.
double sequence_log_prob(const TypeVector& t, const Distribution& p);

/// Inverse-CDF draw of one symbol.
Symbol sample_symbol(std::span<const double> cdf, RandomStream& rng);

/// Running sums of p with the final entry pinned to exactly 1 at the last
/// symbol of positive mass.
std::vector<double> cumulative(const Distribution& p);

/// n i.i.d. draws from p.
SymbolSequence sample_sequence(const Distribution& p, std::size_t n, RandomStream& rng);

/// Type of sample_sequence(p, n, rng) without materializing the sequence;
/// consumes the stream identically.
TypeVector sample_type(const Distribution& p, std::size_t n, RandomStream& rng);

}  // namespace typexp

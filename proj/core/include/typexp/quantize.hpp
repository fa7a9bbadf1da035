#pragma once

// Unsigned fixed-point quantization with slope 2^-q and a bias:
// p_hat = z * 2^-q + bias, z a q-bit unsigned integer chosen to minimize
// |p - p_hat|. Only the first |X|-1 entries are quantized; the last one is
// whatever remains of the unit mass.

#include <span>
#include <vector>

#include "typexp/simplex.hpp"

namespace typexp {

struct QuantizerSpec {
  int bits = 8;
  double bias = 0.0;
};

/// Single value. Half-step ties round up; z saturates at 0 and 2^q - 1.
double quantize_value(double p, const QuantizerSpec& spec);

/// Throws ValidationError for bits < 1 (or > 52) and QuantizationError when
/// the derived last entry falls outside [0, 1].
Distribution quantize_distribution(const Distribution& p, const QuantizerSpec& spec);

struct QuantizationRadius {
  std::vector<double> per_hypothesis;
  double epsilon = 0.0;
};

/// per_hypothesis[j] = V(originals[j], quantized[j]); epsilon is the maximum.
QuantizationRadius quantization_radius(std::span<const Distribution> originals,
                                       std::span<const Distribution> quantized);

}  // namespace typexp

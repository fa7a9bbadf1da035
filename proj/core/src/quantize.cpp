#include "typexp/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "typexp/error.hpp"

namespace typexp {

double quantize_value(double p, const QuantizerSpec& spec) {
  if (spec.bits < 1 || spec.bits > 52) {
    throw ValidationError("quantizer bits must be in [1, 52], got " + std::to_string(spec.bits));
  }
  const double steps = std::ldexp(1.0, spec.bits);
  const double z = std::clamp(std::floor((p - spec.bias) * steps + 0.5), 0.0, steps - 1.0);
  return z / steps + spec.bias;
}

Distribution quantize_distribution(const Distribution& p, const QuantizerSpec& spec) {
  std::vector<double> out(p.alphabet_size());
  double head = 0.0;
  for (std::size_t x = 0; x + 1 < out.size(); ++x) {
    out[x] = quantize_value(p[x], spec);
    head += out[x];
  }
  const double last = 1.0 - head;
  if (last < 0.0 || last > 1.0) {
    throw QuantizationError("quantized entries leave " + std::to_string(last) +
                            " for the last symbol");
  }
  out.back() = last;
  for (double v : out) {
    if (v < 0.0 || v > 1.0) throw QuantizationError("quantized entry outside [0, 1]");
  }
  return Distribution(std::move(out));
}

QuantizationRadius quantization_radius(std::span<const Distribution> originals,
                                       std::span<const Distribution> quantized) {
  if (originals.size() != quantized.size()) {
    throw ValidationError("original and quantized lists differ in length");
  }
  QuantizationRadius r;
  r.per_hypothesis.reserve(originals.size());
  for (std::size_t j = 0; j < originals.size(); ++j) {
    r.per_hypothesis.push_back(variational_distance(originals[j], quantized[j]));
    r.epsilon = std::max(r.epsilon, r.per_hypothesis.back());
  }
  return r;
}

}  // namespace typexp

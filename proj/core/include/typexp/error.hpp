#pragma once

#include <stdexcept>

namespace typexp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad probability vector, alphabet mismatch, bad parameter.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Type enumeration would exceed the configured class-count limit.
class EnumerationOverflow : public Error {
 public:
  using Error::Error;
};

/// Quantized vector does not land back on the simplex.
class QuantizationError : public Error {
 public:
  using Error::Error;
};

/// Geometric mixture of two distributions with disjoint supports.
class DegenerateTilt : public Error {
 public:
  using Error::Error;
};

/// Ratio curve requested for a hypothesis set with zero minimum Chernoff information.
class DegenerateRatio : public Error {
 public:
  using Error::Error;
};

/// Not enough non-zero error cells to fit a slope.
class UndefinedExponent : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace typexp

#pragma once

#include <string>

namespace typexp {

/// Ten significant digits, "inf"/"-inf"/"nan" for non-finite values.
/// Used for every real written to CSV.
std::string format_real(double value);

}  // namespace typexp

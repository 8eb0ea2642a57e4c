#pragma once

#include <string>

namespace ebdi {

/// Fixed-point text with `decimals` places, locale independent. Negative
/// zero prints without a sign.
std::string format_fixed(double value, int decimals);

/// Shortest text that parses back to the same double.
std::string format_shortest(double value);

/// Integral values print without a fractional part; others as format_fixed.
std::string format_count(double value, int decimals);

/// Marker written for missing values in CSV output.
inline constexpr const char* kMissing = "NA";

}  // namespace ebdi

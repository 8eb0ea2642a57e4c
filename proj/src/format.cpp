#include "ebdi/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace ebdi {

std::string format_fixed(double value, int decimals) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return format_shortest(value);
  std::string out(buf, ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_count(double value, int decimals) {
  if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 1e15) {
    return format_fixed(value, 0);
  }
  return format_fixed(value, decimals);
}

}  // namespace ebdi

#pragma once

#include <charconv>
#include <string>

namespace navforge {

/// Shortest decimal text that parses back to the same double.
inline std::string format_number(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace navforge

#pragma once

#include <charconv>
#include <string>

namespace sri {

// Shortest decimal representation that round-trips to the same double.
// Keeps text artifacts byte-reproducible without losing precision.
inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace sri

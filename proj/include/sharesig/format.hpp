#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace sharesig {

/// Shortest round-trip decimal form; locale independent, so CSV output is
/// byte-stable. Non-finite values print as nan / inf / -inf.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace sharesig

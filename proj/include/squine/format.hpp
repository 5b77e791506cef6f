#pragma once

#include <cstdio>
#include <string>

#include "squine/rational.hpp"

namespace squine {

// Locale-independent float rendering, 12 significant digits by default;
// golden files depend on this being byte-stable.
inline std::string fmt_float(double v, int significant = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

inline std::string fmt_rational(const BigRational& q) { return q.get_str(); }

}  // namespace squine

#pragma once

#include <cstdio>
#include <string>

namespace graphcalc {

/// 17 significant digits: enough for every double to round-trip.
inline std::string format_g17(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace graphcalc

#pragma once

#include <cstdio>
#include <string>

namespace bidomain {

// Shortest-faithful float formatting for reports and CSV output: %.17g round
// trips every double, so reruns of a deterministic pipeline are byte
// identical.
inline std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace bidomain

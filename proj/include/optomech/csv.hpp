#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace optomech::csv {

/// 12 significant digits, "NaN" for not-a-number.
inline std::string number(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace optomech::csv

#pragma once

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace mxv::fmtx {

// Fixed-point with a fixed number of decimals; values that round to zero
// print as positive zero so outputs do not flicker between 0 and -0.
inline std::string fixed(double v, int decimals) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
  return fmt::format("{:.{}f}", v, decimals);
}

inline constexpr int kCart = 6;
inline constexpr int kFine = 10;

}  // namespace mxv::fmtx

#pragma once

#include <string_view>

namespace mxv {
inline constexpr std::string_view kVersion = "1.0.0";
}

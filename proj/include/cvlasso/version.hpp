#pragma once

#include <string_view>

namespace cvlasso {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "cvlasso";

}  // namespace cvlasso

#pragma once

namespace dsi {

inline constexpr const char* tool_name = "dsi1d";
inline constexpr const char* tool_version = "1.0.0";

}  // namespace dsi

#pragma once

namespace bicusp {

inline constexpr const char* kToolName = "bicusp";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace bicusp

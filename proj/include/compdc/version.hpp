#pragma once

namespace compdc {

inline constexpr const char* kToolName = "compdc";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace compdc

#pragma once

namespace dp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "deltaprime";

}  // namespace dp

#pragma once

namespace isospec {

inline constexpr const char* kToolName = "isospec";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace isospec

#pragma once

namespace parp {

inline constexpr const char* kToolName = "parp";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace parp

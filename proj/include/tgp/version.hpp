#pragma once

namespace tgp {

inline constexpr const char* kToolName = "tgp";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tgp

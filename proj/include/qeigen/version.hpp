#pragma once

namespace qeigen {

inline constexpr const char* kToolName = "qeigen";
inline constexpr const char* kVersion = "0.1.0";

} // namespace qeigen

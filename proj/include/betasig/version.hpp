#pragma once

namespace betasig {

inline constexpr const char* kToolName = "betasig";
inline constexpr const char* kVersion = "0.1.0";

} // namespace betasig

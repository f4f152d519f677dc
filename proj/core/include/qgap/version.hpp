#pragma once

namespace qgap {

inline constexpr const char* kVersion = "1.0.0";

} // namespace qgap

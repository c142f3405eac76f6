#pragma once

namespace knotflux {

inline constexpr const char* kVersion = "0.1.0";

} // namespace knotflux

#pragma once

namespace circuitforge {

/// Kept in step with the CMake project version.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace circuitforge

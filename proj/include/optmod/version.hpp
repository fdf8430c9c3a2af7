#pragma once

namespace optmod {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace optmod

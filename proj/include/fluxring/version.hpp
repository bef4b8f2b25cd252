#pragma once

namespace fluxring {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fluxring

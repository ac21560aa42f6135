#pragma once

namespace waveaction {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace waveaction

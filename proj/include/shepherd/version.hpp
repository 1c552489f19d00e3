#pragma once

namespace shepherd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace shepherd

#pragma once

namespace hhlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hhlab

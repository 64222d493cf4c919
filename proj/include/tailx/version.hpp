#pragma once

namespace tailx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailx

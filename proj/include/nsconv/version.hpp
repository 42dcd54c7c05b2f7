#pragma once

namespace nsconv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nsconv

#pragma once

namespace keyregion {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace keyregion

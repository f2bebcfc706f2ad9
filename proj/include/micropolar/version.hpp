#pragma once

namespace micropolar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace micropolar

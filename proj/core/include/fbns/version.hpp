#pragma once

namespace fbns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fbns

#pragma once

namespace symclose {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symclose

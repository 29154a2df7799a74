#pragma once

namespace rkhs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rkhs

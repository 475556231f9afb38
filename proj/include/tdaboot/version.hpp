#pragma once

namespace tdaboot {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tdaboot

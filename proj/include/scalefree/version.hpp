#pragma once

namespace scalefree {

inline constexpr const char* version = "0.1.0";

}  // namespace scalefree

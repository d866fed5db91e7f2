#pragma once

namespace acstark {

inline constexpr const char* version = "1.0.0";

} // namespace acstark

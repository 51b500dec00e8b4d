#pragma once

namespace coboson {

inline constexpr const char* version = "0.1.0";

}  // namespace coboson

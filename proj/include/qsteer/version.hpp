#pragma once

namespace qsteer {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsteer

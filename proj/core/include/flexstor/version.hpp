#pragma once

namespace flexstor {

inline constexpr const char* kVersion = "0.1.0";

} // namespace flexstor

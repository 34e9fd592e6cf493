#pragma once

namespace mfa {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mfa

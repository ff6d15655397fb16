#pragma once

namespace varspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace varspec

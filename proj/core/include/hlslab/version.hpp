#pragma once

namespace hlslab {
inline constexpr const char* kVersion = "0.1.0";
}

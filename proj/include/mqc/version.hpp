#pragma once

namespace mqc {
inline constexpr const char* kVersion = "1.0.0";
}

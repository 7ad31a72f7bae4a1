#pragma once

namespace selzeta {
inline constexpr const char* kVersion = "0.1.0";
}

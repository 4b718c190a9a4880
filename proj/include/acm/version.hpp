#pragma once

#define ACM_VERSION "0.1.0"

namespace acm {
inline constexpr const char* version() { return ACM_VERSION; }
}  // namespace acm

#pragma once

namespace cow {

#ifndef COW_BUILD_ID
#define COW_BUILD_ID "unknown"
#endif

inline constexpr const char* kBuildId = COW_BUILD_ID;
inline constexpr const char* kVersion = "0.1.0";

}  // namespace cow

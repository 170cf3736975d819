#pragma once

#define KICKTOP_VERSION_MAJOR 0
#define KICKTOP_VERSION_MINOR 1
#define KICKTOP_VERSION_PATCH 0
#define KICKTOP_VERSION "0.1.0"

namespace kicktop {

inline const char* version() { return KICKTOP_VERSION; }

} // namespace kicktop

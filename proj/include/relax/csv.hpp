#pragma once

#include <cstdio>
#include <string>

namespace relax::csv {

/// 17 significant digits: round-trip exact for IEEE doubles, so identical
/// runs serialize byte-identically.
inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace relax::csv

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace qcdyn {

// Shortest round-trip decimal; "nan"/"inf" spelled out so CSV output does
// not depend on the C library's spelling.
inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace qcdyn

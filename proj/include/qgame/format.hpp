#pragma once

#include <cstdio>
#include <string>

namespace qgame {

// 12 significant digits, trailing zeros kept: the display format for payoffs
// and probabilities.
inline std::string format_display(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

// 17 significant digits: lossless through text, used for CSV and config
// rendering.
inline std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace qgame

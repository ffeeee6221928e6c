#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace owid {

/// Fixed %.12g rendering used by every text output.
inline std::string format_g12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);  // + 0.0 folds -0 into 0
    return buf;
}

/// x rounded to 12 significant digits.
inline double round_g12(double x) { return std::strtod(format_g12(x).c_str(), nullptr); }

} // namespace owid

#pragma once

#include <cstdio>
#include <string>

namespace gravshift::detail {

/// %.17g: enough digits for an exact double round trip.
inline std::string round_trip(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Short form for human-readable tables.
inline std::string brief(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

}  // namespace gravshift::detail

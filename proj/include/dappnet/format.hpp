#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace dappnet {

/// Shortest round-trip decimal form; integral values print without a point.
inline std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Fixed notation with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

/// CSV cell, quoted only when it holds a comma, quote or line break.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace dappnet

#pragma once

// Locale-independent numeric formatting for the CLI surfaces: 17 significant
// digits, '.' decimal point, so every emitted value parses back bit-exactly.

#include <charconv>
#include <string>
#include <system_error>

namespace zetaflow::format {

inline std::string real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string integer(long v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace zetaflow::format

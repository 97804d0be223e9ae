#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "stablederiv/errors.hpp"

namespace stablederiv {

/// Shortest decimal text that round-trips to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

/// Parses the whole of `text` as a double; throws ConfigurationError otherwise.
inline double parse_double(std::string_view text, std::string_view what) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigurationError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return v;
}

} // namespace stablederiv

#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

namespace momentforge::detail {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool contains_ci(std::string_view haystack, std::string_view needle) {
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

inline bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    return to_lower(s.substr(0, prefix.size())) == to_lower(prefix);
}

inline std::string trim(std::string_view s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

/// Trim plus at most one trailing sentence terminator ('.', '?', '!').
inline std::string trim_sentence(std::string_view s) {
    std::string out = trim(s);
    if (!out.empty() && (out.back() == '.' || out.back() == '?' || out.back() == '!')) {
        out.pop_back();
        out = trim(out);
    }
    return out;
}

} // namespace momentforge::detail

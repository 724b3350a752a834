#include "lstmcs/textfmt.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

#include "lstmcs/errors.hpp"

namespace lstmcs {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double_strict(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError("not a number: '" + s + "'");
    return v;
}

std::uint64_t parse_u64_strict(const std::string& s) {
    std::uint64_t v = 0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError("not an unsigned integer: '" + s + "'");
    return v;
}

std::size_t parse_size_strict(const std::string& s) {
    return static_cast<std::size_t>(parse_u64_strict(s));
}

bool parse_bool_strict(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError("not a boolean (true/false): '" + s + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace lstmcs

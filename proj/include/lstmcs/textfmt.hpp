#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lstmcs {

// shortest-faithful decimal: to_chars general form, 17 significant digits,
// locale independent
std::string format_double(double v);

double parse_double_strict(const std::string& s);
std::size_t parse_size_strict(const std::string& s);
std::uint64_t parse_u64_strict(const std::string& s);
bool parse_bool_strict(const std::string& s);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

}  // namespace lstmcs

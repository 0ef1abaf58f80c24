#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace newspulse {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Strict numeric parsers; `what` names the field in error messages.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_i64(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);

// Plain comma split. None of the file formats here quote fields.
std::vector<std::string_view> split_csv(std::string_view line);

void strip_cr(std::string& line);

}  // namespace newspulse

#include "newspulse/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>

#include "newspulse/errors.hpp"

namespace newspulse {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

namespace {
[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw InputError("invalid " + std::string(what) + ": \"" + std::string(text) + "\"");
}
}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  // strtod accepts leading whitespace and partial parses; reject both
  if (text.empty() || text.front() == ' ' || text.front() == '\t') bad(what, text);
  std::string owned(text);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size() || errno == ERANGE) bad(what, text);
  return v;
}

std::int64_t parse_i64(std::string_view text, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad(what, text);
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad(what, text);
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace newspulse

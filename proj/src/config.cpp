#include "newspulse/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"

namespace newspulse {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path.string());
}

Config Config::from_text(std::string_view text, std::string_view origin) {
  Config cfg;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    auto where = [&] { return std::string(origin) + ":" + std::to_string(lineno); };
    if (eq == std::string_view::npos)
      throw InputError(where() + ": expected key=value, got \"" + std::string(line) + "\"");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError(where() + ": empty key");
    if (cfg.entries_.count(std::string(key)))
      throw InputError(where() + ": duplicate key \"" + std::string(key) + "\"");
    cfg.entries_.emplace(std::string(key), std::string(value));
  }
  return cfg;
}

bool Config::has(std::string_view key) const {
  return entries_.find(std::string(key)) != entries_.end();
}

std::optional<std::string> Config::get(std::string_view key) const {
  auto it = entries_.find(std::string(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(std::string_view key) const {
  auto v = get(key);
  if (!v) throw InputError("config: missing key \"" + std::string(key) + "\"");
  return *v;
}

std::int64_t Config::get_int(std::string_view key) const {
  auto v = get_string(key);
  try {
    return parse_i64(v, key);
  } catch (const InputError&) {
    throw InputError("config: key \"" + std::string(key) +
                     "\" is not an integer: \"" + v + "\"");
  }
}

double Config::get_double(std::string_view key) const {
  auto v = get_string(key);
  try {
    return parse_double(v, key);
  } catch (const InputError&) {
    throw InputError("config: key \"" + std::string(key) +
                     "\" is not a number: \"" + v + "\"");
  }
}

bool Config::get_bool(std::string_view key) const {
  auto v = get_string(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw InputError("config: key \"" + std::string(key) +
                   "\" must be true or false, got \"" + v + "\"");
}

std::string Config::get_string(std::string_view key, std::string_view fallback) const {
  auto v = get(key);
  return v ? *v : std::string(fallback);
}

std::int64_t Config::get_int(std::string_view key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double Config::get_double(std::string_view key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool Config::get_bool(std::string_view key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

void Config::set(std::string_view key, std::string_view value) {
  entries_[std::string(key)] = std::string(value);
}

void Config::require_known(const std::vector<std::string_view>& known) const {
  std::string bad;
  for (const auto& [key, value] : entries_) {
    if (std::find(known.begin(), known.end(), key) != known.end()) continue;
    if (!bad.empty()) bad += ", ";
    bad += key;
  }
  if (!bad.empty()) throw InputError("config: unknown keys: " + bad);
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)hash());
  return buf;
}

}  // namespace newspulse

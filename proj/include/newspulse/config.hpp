#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newspulse {

// Flat key=value settings file. '#' starts a comment, blank lines are
// skipped, keys may not repeat. Values keep their literal spelling so the
// canonical serialization (sorted keys, one per line) and its hash are stable
// across load/save round trips.
class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config from_text(std::string_view text, std::string_view origin = "<text>");

  bool has(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;

  // typed access; throws InputError naming the key on absence or bad form
  std::string get_string(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  double get_double(std::string_view key) const;
  bool get_bool(std::string_view key) const;  // true/false

  std::string get_string(std::string_view key, std::string_view fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  void set(std::string_view key, std::string_view value);

  // throws InputError listing any key not in `known`
  void require_known(const std::vector<std::string_view>& known) const;

  std::string serialize() const;     // canonical: sorted keys, key=value lines
  std::uint64_t hash() const;        // FNV-1a over the canonical serialization
  std::string hash_hex() const;      // 16 lowercase hex digits

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace newspulse

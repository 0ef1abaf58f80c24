#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace newspulse {

// Exchange session: 09:30 through 15:59, 390 one-minute bars per date.
inline constexpr int kSessionOpenMinute = 570;
inline constexpr int kSessionMinutes = 390;
inline constexpr int kSessionEndMinute = kSessionOpenMinute + kSessionMinutes;

struct MinuteBar {
  std::string ticker;
  int date_days = 0;       // days since 1970-01-01
  int minute_of_day = 0;   // [570, 960)
  double price = 0.0;      // last trade in the minute, > 0
  std::int64_t n_trades = 0;
  std::int64_t volume = 0;
};

// Validated bars in file order; unique (ticker, date, minute), in-session
// minutes, positive prices. Errors carry the offending row number.
std::vector<MinuteBar> ingest_bars(const std::filesystem::path& path);

void save_bars_csv(const std::filesystem::path& path,
                   const std::vector<MinuteBar>& bars,
                   std::string_view provenance = {});

std::string format_date(int date_days);        // YYYY-MM-DD
int parse_date(std::string_view text);         // throws InputError
std::string format_minute(int minute_of_day);  // HH:MM
int parse_minute(std::string_view text);

// floor division so pre-1970 instants still land on the right date
std::int64_t days_of_ts(std::int64_t ts_ms);
int minute_of_ts(std::int64_t ts_ms);

}  // namespace newspulse

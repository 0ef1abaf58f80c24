#include "newspulse/bars.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"

namespace newspulse {

std::string format_date(int date_days) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{date_days}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

int parse_date(std::string_view text) {
  using namespace std::chrono;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw InputError("bad date (want YYYY-MM-DD): \"" + std::string(text) + "\"");
  int y = int(parse_i64(text.substr(0, 4), "date year"));
  int m = int(parse_i64(text.substr(5, 2), "date month"));
  int d = int(parse_i64(text.substr(8, 2), "date day"));
  year_month_day ymd{year{y}, month{unsigned(m)}, day{unsigned(d)}};
  if (!ymd.ok())
    throw InputError("invalid calendar date: \"" + std::string(text) + "\"");
  return int(sys_days{ymd}.time_since_epoch().count());
}

std::string format_minute(int minute_of_day) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", minute_of_day / 60,
                minute_of_day % 60);
  return buf;
}

int parse_minute(std::string_view text) {
  if (text.size() != 5 || text[2] != ':')
    throw InputError("bad minute (want HH:MM): \"" + std::string(text) + "\"");
  int h = int(parse_i64(text.substr(0, 2), "minute hour"));
  int m = int(parse_i64(text.substr(3, 2), "minute"));
  if (h < 0 || h > 23 || m < 0 || m > 59)
    throw InputError("minute out of range: \"" + std::string(text) + "\"");
  return h * 60 + m;
}

std::int64_t days_of_ts(std::int64_t ts_ms) {
  constexpr std::int64_t day = 86'400'000;
  std::int64_t d = ts_ms / day;
  if (ts_ms % day < 0) --d;
  return d;
}

int minute_of_ts(std::int64_t ts_ms) {
  constexpr std::int64_t day = 86'400'000;
  std::int64_t rem = ts_ms - days_of_ts(ts_ms) * day;
  return int(rem / 60'000);
}

std::vector<MinuteBar> ingest_bars(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open bars file: " + path.string());

  std::vector<MinuteBar> bars;
  std::unordered_map<std::string, std::size_t> seen;  // key -> row number
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "ticker,date,minute,price,n_trades,volume")
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": unexpected bars header");
      saw_header = true;
      continue;
    }
    auto fields = split_csv(line);
    auto fail = [&](const std::string& why) -> InputError {
      return InputError(path.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 6) throw fail("expected 6 columns");
    MinuteBar b;
    b.ticker = std::string(fields[0]);
    if (b.ticker.empty()) throw fail("empty ticker");
    try {
      b.date_days = parse_date(fields[1]);
      b.minute_of_day = parse_minute(fields[2]);
      b.price = parse_double(fields[3], "price");
      b.n_trades = parse_i64(fields[4], "n_trades");
      b.volume = parse_i64(fields[5], "volume");
    } catch (const InputError& e) {
      throw fail(e.what());
    }
    if (b.minute_of_day < kSessionOpenMinute || b.minute_of_day >= kSessionEndMinute)
      throw fail("minute outside exchange session: " + format_minute(b.minute_of_day));
    if (!(b.price > 0)) throw fail("non-positive price");
    if (b.n_trades < 0 || b.volume < 0) throw fail("negative count");

    std::string key = b.ticker + '|' + std::to_string(b.date_days) + '|' +
                      std::to_string(b.minute_of_day);
    auto [it, inserted] = seen.emplace(std::move(key), lineno);
    if (!inserted)
      throw fail("duplicate (ticker,date,minute), first at row " +
                 std::to_string(it->second));
    bars.push_back(std::move(b));
  }
  if (!saw_header) throw InputError(path.string() + ": missing bars header");
  return bars;
}

void save_bars_csv(const std::filesystem::path& path,
                   const std::vector<MinuteBar>& bars,
                   std::string_view provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path.string());
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "ticker,date,minute,price,n_trades,volume\n";
  for (const auto& b : bars) {
    out << b.ticker << ',' << format_date(b.date_days) << ','
        << format_minute(b.minute_of_day) << ',' << format_double(b.price) << ','
        << b.n_trades << ',' << b.volume << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace newspulse

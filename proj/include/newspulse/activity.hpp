#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newspulse/bars.hpp"

namespace newspulse {

enum class Measure { Volatility, NTrades, Volume };
Measure parse_measure(std::string_view text);
const char* to_string(Measure m);

// Raw per-minute values for one ticker; nullopt marks a gap. Column s holds
// session minute kSessionOpenMinute + s.
struct ActivityPanel {
  std::string ticker;
  Measure measure = Measure::Volatility;
  std::vector<int> dates;  // days since epoch, ascending
  std::vector<std::vector<std::optional<double>>> values;  // [date][s], s < 390

  int date_index(int date_days) const;  // -1 when absent
  std::optional<double> at(int date_days, int minute_of_day) const;
};

// Volatility is the absolute log-return to the next minute's price; the value
// sits at the earlier minute and needs both bars present. Trade count and
// volume are read straight off each bar.
ActivityPanel raw_activity(const std::vector<MinuteBar>& bars,
                           std::string_view ticker, Measure measure);

// Doubly normalized activity: value / date mean / across-dates minute mean.
// Dates with no values or zero mean are dropped; minutes whose across-dates
// stage-1 mean is zero or absent become gaps.
struct ActivitySeries {
  ActivityPanel normalized;                         // retained dates only
  std::vector<double> date_means;                   // per retained date
  std::vector<std::optional<double>> minute_means;  // per session minute
  std::vector<int> dropped_dates;
};

ActivitySeries normalize(const ActivityPanel& raw);

}  // namespace newspulse

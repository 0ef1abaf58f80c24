#include "newspulse/activity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "newspulse/errors.hpp"

namespace newspulse {

Measure parse_measure(std::string_view text) {
  if (text == "volatility") return Measure::Volatility;
  if (text == "n_trades") return Measure::NTrades;
  if (text == "volume") return Measure::Volume;
  throw InputError("unknown measure: \"" + std::string(text) + "\"");
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::Volatility: return "volatility";
    case Measure::NTrades: return "n_trades";
    case Measure::Volume: return "volume";
  }
  return "volatility";
}

int ActivityPanel::date_index(int date_days) const {
  auto it = std::lower_bound(dates.begin(), dates.end(), date_days);
  if (it == dates.end() || *it != date_days) return -1;
  return int(it - dates.begin());
}

std::optional<double> ActivityPanel::at(int date_days, int minute_of_day) const {
  int d = date_index(date_days);
  if (d < 0) return std::nullopt;
  int s = minute_of_day - kSessionOpenMinute;
  if (s < 0 || s >= kSessionMinutes) return std::nullopt;
  return values[d][s];
}

ActivityPanel raw_activity(const std::vector<MinuteBar>& bars,
                           std::string_view ticker, Measure measure) {
  // prices per (date, session minute); ingest guarantees uniqueness
  std::map<int, std::vector<std::optional<double>>> by_date;
  for (const auto& b : bars) {
    if (b.ticker != ticker) continue;
    auto& row = by_date[b.date_days];
    if (row.empty()) row.resize(kSessionMinutes);
    double v = 0.0;
    switch (measure) {
      case Measure::Volatility: v = b.price; break;  // log-diffed below
      case Measure::NTrades: v = double(b.n_trades); break;
      case Measure::Volume: v = double(b.volume); break;
    }
    row[b.minute_of_day - kSessionOpenMinute] = v;
  }
  if (by_date.empty())
    throw EmptyResultError("no bars for ticker " + std::string(ticker));

  ActivityPanel panel;
  panel.ticker = std::string(ticker);
  panel.measure = measure;
  for (auto& [date, row] : by_date) {
    panel.dates.push_back(date);
    if (measure == Measure::Volatility) {
      // value at s needs prices at s and s+1; the last minute has no successor
      std::vector<std::optional<double>> vol(kSessionMinutes);
      for (int s = 0; s + 1 < kSessionMinutes; ++s)
        if (row[s] && row[s + 1])
          vol[s] = std::abs(std::log(*row[s + 1]) - std::log(*row[s]));
      panel.values.push_back(std::move(vol));
    } else {
      panel.values.push_back(std::move(row));
    }
  }
  return panel;
}

ActivitySeries normalize(const ActivityPanel& raw) {
  if (raw.dates.size() < 2)
    throw InputError("normalization needs at least 2 dates, got " +
                     std::to_string(raw.dates.size()));

  ActivitySeries out;
  out.normalized.ticker = raw.ticker;
  out.normalized.measure = raw.measure;

  // stage 1: divide by the date mean; zero-mean and empty dates drop out
  std::vector<std::vector<std::optional<double>>> stage1;
  for (std::size_t d = 0; d < raw.dates.size(); ++d) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : raw.values[d])
      if (v) {
        sum += *v;
        ++n;
      }
    double mean = n ? sum / double(n) : 0.0;
    if (mean == 0.0) {
      out.dropped_dates.push_back(raw.dates[d]);
      continue;
    }
    out.normalized.dates.push_back(raw.dates[d]);
    out.date_means.push_back(mean);
    std::vector<std::optional<double>> row(kSessionMinutes);
    for (int s = 0; s < kSessionMinutes; ++s)
      if (raw.values[d][s]) row[s] = *raw.values[d][s] / mean;
    stage1.push_back(std::move(row));
  }
  if (stage1.empty())
    throw EmptyResultError("every date dropped during normalization (zero activity)");

  // stage 2: divide by the across-dates mean at the same minute-of-day
  out.minute_means.assign(kSessionMinutes, std::nullopt);
  for (int s = 0; s < kSessionMinutes; ++s) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : stage1)
      if (row[s]) {
        sum += *row[s];
        ++n;
      }
    if (n && sum != 0.0) out.minute_means[s] = sum / double(n);
  }
  out.normalized.values.resize(stage1.size());
  for (std::size_t d = 0; d < stage1.size(); ++d) {
    auto& row = out.normalized.values[d];
    row.resize(kSessionMinutes);
    for (int s = 0; s < kSessionMinutes; ++s)
      if (stage1[d][s] && out.minute_means[s])
        row[s] = *stage1[d][s] / *out.minute_means[s];
  }
  return out;
}

}  // namespace newspulse

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "newspulse/activity.hpp"

namespace newspulse {

struct ResponseCurve {
  int lag_lo = 0;
  std::vector<double> mean;            // NaN where events == 0
  std::vector<std::uint32_t> events;   // usable events per lag

  int lag_at(std::size_t i) const { return lag_lo + int(i); }
  std::size_t size() const { return mean.size(); }

  // header: lag_min,mean,events
  void save_csv(const std::filesystem::path& path,
                std::string_view provenance = {}) const;
};

struct EventStudyOptions {
  int lag_lo = -30;
  int lag_hi = 90;  // inclusive
  // off-session events are dropped; optionally snap pre-open ones to 09:30
  bool premarket_to_open = false;
};

// Mean normalized activity at each lag relative to event minutes. Events
// collapse to distinct (date, minute) pairs; lags falling outside the session
// or on data gaps are excluded per lag (the per-lag event counts expose
// this). Zero usable events throws EmptyResultError.
ResponseCurve event_study(const ActivitySeries& series,
                          const std::vector<std::int64_t>& event_ts_ms,
                          const EventStudyOptions& opts = {});

// Event-count-weighted mean of curve values over lags in [lo, hi).
double window_mean(const ResponseCurve& curve, int lo, int hi);

}  // namespace newspulse

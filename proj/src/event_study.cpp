#include "newspulse/event_study.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"

namespace newspulse {

void ResponseCurve::save_csv(const std::filesystem::path& path,
                             std::string_view provenance) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path.string());
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "lag_min,mean,events\n";
  for (std::size_t i = 0; i < mean.size(); ++i)
    out << lag_at(i) << ',' << format_double(mean[i]) << ',' << events[i] << '\n';
  if (!out) throw InputError("write failed: " + path.string());
}

ResponseCurve event_study(const ActivitySeries& series,
                          const std::vector<std::int64_t>& event_ts_ms,
                          const EventStudyOptions& opts) {
  if (opts.lag_hi < opts.lag_lo) throw InputError("lag range inverted");

  // events collapse to distinct in-session (date, minute) pairs on dates the
  // series actually covers
  std::vector<std::pair<int, int>> anchors;
  for (auto ts : event_ts_ms) {
    int date = int(days_of_ts(ts));
    int minute = minute_of_ts(ts);
    if (minute < kSessionOpenMinute) {
      if (!opts.premarket_to_open) continue;
      minute = kSessionOpenMinute;
    }
    if (minute >= kSessionEndMinute) continue;
    if (series.normalized.date_index(date) < 0) continue;
    anchors.emplace_back(date, minute);
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  const std::size_t nlags = std::size_t(opts.lag_hi - opts.lag_lo) + 1;
  std::vector<double> sum(nlags, 0.0);
  std::vector<std::uint32_t> count(nlags, 0);
  bool any = false;
  for (const auto& [date, minute] : anchors) {
    int d = series.normalized.date_index(date);
    bool used = false;
    for (std::size_t i = 0; i < nlags; ++i) {
      int m = minute + opts.lag_lo + int(i);
      if (m < kSessionOpenMinute || m >= kSessionEndMinute) continue;
      const auto& v = series.normalized.values[d][m - kSessionOpenMinute];
      if (!v) continue;
      sum[i] += *v;
      ++count[i];
      used = true;
    }
    any = any || used;
  }
  if (!any) throw EmptyResultError("no usable events");

  ResponseCurve curve;
  curve.lag_lo = opts.lag_lo;
  curve.mean.resize(nlags);
  curve.events = std::move(count);
  for (std::size_t i = 0; i < nlags; ++i)
    curve.mean[i] = curve.events[i]
                        ? sum[i] / double(curve.events[i])
                        : std::numeric_limits<double>::quiet_NaN();
  return curve;
}

double window_mean(const ResponseCurve& curve, int lo, int hi) {
  if (hi <= lo) throw InputError("window_mean range empty");
  if (lo < curve.lag_lo || hi > curve.lag_lo + int(curve.size()))
    throw InputError("window_mean range outside curve lags");
  double sum = 0.0;
  std::uint64_t n = 0;
  for (int lag = lo; lag < hi; ++lag) {
    std::size_t i = std::size_t(lag - curve.lag_lo);
    if (!curve.events[i]) continue;
    sum += curve.mean[i] * double(curve.events[i]);
    n += curve.events[i];
  }
  if (n == 0) throw EmptyResultError("window_mean over lags with no events");
  return sum / double(n);
}

}  // namespace newspulse

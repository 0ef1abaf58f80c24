#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "newspulse/index.hpp"

namespace newspulse {

enum class TopAggregation { Max, Sum };
TopAggregation parse_top_aggregation(std::string_view text);
const char* to_string(TopAggregation agg);

struct ScoreParams {
  // trailing novelty window (one week) and topicality half-width (30 min)
  std::int64_t tau_ms = 7LL * 24 * 60 * 60 * 1000;
  std::int64_t top_halfwidth_ms = 30LL * 60 * 1000;
  TopAggregation top_aggregation = TopAggregation::Max;
  std::vector<std::string> history_sources;  // empty = all agencies

  // strictly-earlier trailing window: t - tau < t_h < t, so articles at the
  // query timestamp (simultaneity) are left to topicality
  TimeWindow novelty_window(std::int64_t ts_ms) const {
    return {ts_ms - tau_ms + 1, ts_ms - 1};
  }
  // inclusive on both edges
  TimeWindow topicality_window(std::int64_t ts_ms) const {
    return {ts_ms - top_halfwidth_ms, ts_ms + top_halfwidth_ms};
  }
};

struct NoveltyScore {
  double value = 0.0;
  std::uint32_t window_count = 0;  // keyword-sharing history articles in window
};

struct AgencyContribution {
  std::string agency;
  double similarity = 0.0;
};

struct TopicalityScore {
  double value = 0.0;
  std::vector<AgencyContribution> contributions;  // sorted by agency name
};

// Scores for an arbitrary article against index history. The article itself,
// if indexed, is excluded by the window (novelty) or agency rule (topicality).
NoveltyScore novelty(const Article& article, const InvertedIndex& index,
                     const ScoreParams& params = {});
TopicalityScore topicality(const Article& article, const InvertedIndex& index,
                           const ScoreParams& params = {});

struct ScoreRecord {
  std::string id;
  std::string keyword;
  std::string agency;
  EventKind kind = EventKind::Headline;
  std::int64_t ts_ms = 0;
  double novelty = 0.0;
  double topicality = 0.0;
  std::uint32_t novelty_count = 0;
  std::vector<AgencyContribution> top_contributions;
};

// Mean-split labels over one keyword stream: high iff score >= stream mean.
// Note the reading inversion: novelty "high" means many similar predecessors,
// i.e. the article is stale, not fresh.
struct ClassifyResult {
  double nov_mean = 0.0;
  double top_mean = 0.0;
  std::vector<bool> nov_high;
  std::vector<bool> top_high;
};
ClassifyResult classify(const std::vector<ScoreRecord>& records);

struct StreamOptions {
  ScoreParams params;
  std::string keyword_filter;            // empty = score every tagged article
  std::optional<EventKind> kind_filter;  // filters scoring, never history
  int workers = 0;                       // 0 = hardware concurrency
  std::size_t batch_size = 2048;
};

struct StreamStats {
  std::uint64_t read = 0;
  std::uint64_t indexed = 0;
  std::uint64_t scored = 0;
  std::uint64_t skipped_story = 0;
  std::uint64_t skipped_unkeyworded = 0;
  std::uint64_t skipped_filtered = 0;
  std::size_t peak_live = 0;  // high-water index size; bounded by the window
};

// One pass over a timestamp-ordered article source. Maintains the index with
// eviction behind the active window, scores each eligible article, and emits
// records in stream order. An article's topicality is finalized only once the
// stream frontier passes its +half-width edge. Emitted values do not depend
// on worker count or batch size.
StreamStats score_stream(const std::function<std::optional<Article>()>& source,
                         const IdfTable& table, const StreamOptions& opts,
                         const std::function<void(ScoreRecord&&)>& sink);

}  // namespace newspulse

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "newspulse/article.hpp"
#include "newspulse/idf.hpp"
#include "newspulse/similarity.hpp"

namespace newspulse {

// Inclusive timestamp interval; empty when lo_ms > hi_ms.
struct TimeWindow {
  std::int64_t lo_ms;
  std::int64_t hi_ms;
};

// Time-ordered inverted index over weighted article vectors, with postings by
// token and by keyword. Single writer (append/evict), any number of
// concurrent readers between writes. Appends must be timestamp-monotone,
// which keeps every posting list sorted by time and makes window queries a
// pair of binary searches.
//
// Articles get dense serials; eviction drops a prefix of serials, so a serial
// minus begin_serial() is a stable slot while no write happens.
class InvertedIndex {
 public:
  struct Stored {
    std::string id;
    std::int64_t ts_ms = 0;
    std::uint32_t agency = 0;
    EventKind kind = EventKind::Headline;
    std::vector<std::uint32_t> keywords;  // sorted unique interned ids
    WeightedVector vec;
  };

  // Per-query scratch so the hot path never allocates. One instance per
  // reader thread. dot[slot] is valid only while stamp[slot] == epoch.
  struct DotScratch {
    std::vector<double> dot;
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> serials;  // candidate buffer for callers
    std::uint32_t epoch = 0;

    void begin(std::size_t slots);
    bool hit(std::uint32_t slot) const { return stamp[slot] == epoch; }
  };

  explicit InvertedIndex(const IdfTable& table) : table_(&table) {}

  const IdfTable& table() const { return *table_; }

  // Returns the article's serial. Throws InputError when ts goes backwards.
  std::uint32_t append(const Article& a);

  // Drops all stored articles with ts < cutoff and trims posting lists.
  void evict_older_than(std::int64_t cutoff_ts_ms);

  std::size_t live_count() const { return store_.size(); }
  std::uint32_t begin_serial() const { return base_serial_; }
  std::uint32_t end_serial() const {
    return base_serial_ + static_cast<std::uint32_t>(store_.size());
  }
  const Stored& at(std::uint32_t serial) const {
    return store_[serial - base_serial_];
  }

  // Accumulates idf^2 over tokens shared with `query` into s.dot for every
  // stored article inside `window`; hits are marked via s.stamp. Equals the
  // merge-join dot() against each candidate bit for bit: both walk token ids
  // in ascending order, so the per-pair additions happen in the same order.
  void accumulate(const WeightedVector& query, TimeWindow window,
                  DotScratch& s) const;

  // Ascending distinct serials of stored articles in the window carrying
  // >= 1 of keyword_ids. Ascending serial is chronological order.
  void keyword_window_serials(const std::vector<std::uint32_t>& keyword_ids,
                              TimeWindow window,
                              std::vector<std::uint32_t>& out) const;

  // Serial range [first, last) of stored articles inside the window.
  std::pair<std::uint32_t, std::uint32_t> window_serial_range(TimeWindow window) const;

  // Ids of stored articles in the window sharing >= 1 weighted token: a
  // superset of everything with nonzero cosine against `a`.
  std::vector<std::string> query_candidates(const Article& a,
                                            TimeWindow window) const;

  // Distinct stored articles in the window carrying >= 1 of keyword_ids.
  // agency_allowed (indexed by agency id) optionally restricts sources.
  std::size_t keyword_window_count(const std::vector<std::uint32_t>& keyword_ids,
                                   TimeWindow window,
                                   const std::vector<char>* agency_allowed) const;

  std::uint32_t intern_agency(std::string_view name);
  std::uint32_t intern_keyword(std::string_view name);
  std::optional<std::uint32_t> find_agency(std::string_view name) const;
  std::optional<std::uint32_t> find_keyword(std::string_view name) const;
  const std::string& agency_name(std::uint32_t id) const { return agencies_[id]; }
  const std::string& keyword_name(std::uint32_t id) const { return keywords_[id]; }
  std::size_t agency_count() const { return agencies_.size(); }

 private:
  struct PostingList {
    std::vector<std::uint32_t> serials;  // strictly increasing
    std::uint32_t head = 0;              // entries before head are evicted
  };

  // [first, last) posting range whose timestamps fall inside window
  void window_range(const PostingList& pl, TimeWindow w, std::size_t& first,
                    std::size_t& last) const;
  void trim(std::vector<PostingList>& lists);

  const IdfTable* table_;
  std::deque<Stored> store_;
  std::uint32_t base_serial_ = 0;
  std::int64_t last_ts_ = INT64_MIN;
  std::string last_id_;

  std::vector<PostingList> postings_;          // by token id
  std::vector<PostingList> keyword_postings_;  // by keyword id

  std::vector<std::string> agencies_;
  std::vector<std::string> keywords_;
  StringIdMap agency_ids_;
  StringIdMap keyword_ids_;
};

}  // namespace newspulse

#include "newspulse/index.hpp"

#include <algorithm>

#include "newspulse/errors.hpp"

namespace newspulse {

void InvertedIndex::DotScratch::begin(std::size_t slots) {
  if (stamp.size() < slots) {
    stamp.resize(slots, 0);
    dot.resize(slots, 0.0);
  }
  if (++epoch == 0) {  // epoch wrapped; stamps are stale
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }
}

namespace {
std::uint32_t intern(std::string_view name, std::vector<std::string>& names,
                     StringIdMap& ids) {
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names.size());
  names.emplace_back(name);
  ids.emplace(names.back(), id);
  return id;
}
}  // namespace

std::uint32_t InvertedIndex::intern_agency(std::string_view name) {
  return intern(name, agencies_, agency_ids_);
}

std::uint32_t InvertedIndex::intern_keyword(std::string_view name) {
  auto id = intern(name, keywords_, keyword_ids_);
  if (keyword_postings_.size() < keywords_.size())
    keyword_postings_.resize(keywords_.size());
  return id;
}

std::optional<std::uint32_t> InvertedIndex::find_agency(std::string_view name) const {
  auto it = agency_ids_.find(name);
  if (it == agency_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> InvertedIndex::find_keyword(std::string_view name) const {
  auto it = keyword_ids_.find(name);
  if (it == keyword_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t InvertedIndex::append(const Article& a) {
  if (a.ts_ms < last_ts_)
    throw InputError("index append out of order: " + a.id + " (ts " +
                     std::to_string(a.ts_ms) + ") after " + last_id_ + " (ts " +
                     std::to_string(last_ts_) + ")");
  last_ts_ = a.ts_ms;
  last_id_ = a.id;

  auto serial = end_serial();
  Stored s;
  s.id = a.id;
  s.ts_ms = a.ts_ms;
  s.agency = intern_agency(a.agency);
  s.kind = a.kind;
  s.keywords.reserve(a.keywords.size());
  for (const auto& k : a.keywords) s.keywords.push_back(intern_keyword(k));
  std::sort(s.keywords.begin(), s.keywords.end());
  s.keywords.erase(std::unique(s.keywords.begin(), s.keywords.end()),
                   s.keywords.end());
  s.vec = vectorize(a, *table_);

  if (postings_.size() < table_->vocab_size()) postings_.resize(table_->vocab_size());
  for (auto tok : s.vec.ids) postings_[tok].serials.push_back(serial);
  for (auto kw : s.keywords) keyword_postings_[kw].serials.push_back(serial);

  store_.push_back(std::move(s));
  return serial;
}

void InvertedIndex::trim(std::vector<PostingList>& lists) {
  for (auto& pl : lists) {
    auto& v = pl.serials;
    while (pl.head < v.size() && v[pl.head] < base_serial_) ++pl.head;
    if (pl.head > 64 && pl.head > v.size() / 2) {
      v.erase(v.begin(), v.begin() + pl.head);
      pl.head = 0;
    }
  }
}

void InvertedIndex::evict_older_than(std::int64_t cutoff_ts_ms) {
  bool changed = false;
  while (!store_.empty() && store_.front().ts_ms < cutoff_ts_ms) {
    store_.pop_front();
    ++base_serial_;
    changed = true;
  }
  if (!changed) return;
  trim(postings_);
  trim(keyword_postings_);
}

void InvertedIndex::window_range(const PostingList& pl, TimeWindow w,
                                 std::size_t& first, std::size_t& last) const {
  auto b = pl.serials.begin() + pl.head;
  auto e = pl.serials.end();
  // posting timestamps are non-decreasing because appends are
  auto lo = std::lower_bound(b, e, w.lo_ms, [&](std::uint32_t serial, std::int64_t t) {
    return at(serial).ts_ms < t;
  });
  auto hi = std::upper_bound(lo, e, w.hi_ms, [&](std::int64_t t, std::uint32_t serial) {
    return t < at(serial).ts_ms;
  });
  first = lo - pl.serials.begin();
  last = hi - pl.serials.begin();
}

void InvertedIndex::accumulate(const WeightedVector& query, TimeWindow window,
                               DotScratch& s) const {
  s.begin(store_.size());
  if (store_.empty() || window.lo_ms > window.hi_ms) return;
  for (std::size_t i = 0; i < query.ids.size(); ++i) {
    auto tok = query.ids[i];
    if (tok >= postings_.size()) continue;
    const auto& pl = postings_[tok];
    std::size_t first, last;
    window_range(pl, window, first, last);
    const double w2 = query.weights[i] * query.weights[i];
    for (std::size_t p = first; p < last; ++p) {
      auto slot = pl.serials[p] - base_serial_;
      if (s.stamp[slot] != s.epoch) {
        s.stamp[slot] = s.epoch;
        s.dot[slot] = 0.0;
      }
      s.dot[slot] += w2;
    }
  }
}

std::pair<std::uint32_t, std::uint32_t> InvertedIndex::window_serial_range(
    TimeWindow window) const {
  if (store_.empty() || window.lo_ms > window.hi_ms)
    return {base_serial_, base_serial_};
  auto lo = std::lower_bound(store_.begin(), store_.end(), window.lo_ms,
                             [](const Stored& s, std::int64_t t) { return s.ts_ms < t; });
  auto hi = std::upper_bound(lo, store_.end(), window.hi_ms,
                             [](std::int64_t t, const Stored& s) { return t < s.ts_ms; });
  return {base_serial_ + std::uint32_t(lo - store_.begin()),
          base_serial_ + std::uint32_t(hi - store_.begin())};
}

std::vector<std::string> InvertedIndex::query_candidates(const Article& a,
                                                         TimeWindow window) const {
  DotScratch s;
  auto vec = vectorize(a, *table_);
  accumulate(vec, window, s);
  auto [first, last] = window_serial_range(window);
  std::vector<std::string> ids;
  for (auto serial = first; serial < last; ++serial)
    if (s.hit(serial - base_serial_)) ids.push_back(at(serial).id);
  return ids;
}

void InvertedIndex::keyword_window_serials(
    const std::vector<std::uint32_t>& keyword_ids, TimeWindow window,
    std::vector<std::uint32_t>& out) const {
  out.clear();
  if (store_.empty() || window.lo_ms > window.hi_ms) return;
  for (auto kw : keyword_ids) {
    if (kw >= keyword_postings_.size()) continue;
    const auto& pl = keyword_postings_[kw];
    std::size_t first, last;
    window_range(pl, window, first, last);
    out.insert(out.end(), pl.serials.begin() + first, pl.serials.begin() + last);
  }
  if (keyword_ids.size() > 1) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

std::size_t InvertedIndex::keyword_window_count(
    const std::vector<std::uint32_t>& keyword_ids, TimeWindow window,
    const std::vector<char>* agency_allowed) const {
  if (store_.empty() || window.lo_ms > window.hi_ms) return 0;
  if (keyword_ids.size() == 1) {
    // postings hold ascending serials, so the window range is the answer
    if (keyword_ids[0] >= keyword_postings_.size()) return 0;
    const auto& pl = keyword_postings_[keyword_ids[0]];
    std::size_t first, last;
    window_range(pl, window, first, last);
    if (!agency_allowed) return last - first;
    std::size_t n = 0;
    for (std::size_t p = first; p < last; ++p) {
      auto ag = at(pl.serials[p]).agency;
      if (ag < agency_allowed->size() && (*agency_allowed)[ag]) ++n;
    }
    return n;
  }
  std::vector<std::uint32_t> hits;
  for (auto kw : keyword_ids) {
    if (kw >= keyword_postings_.size()) continue;
    const auto& pl = keyword_postings_[kw];
    std::size_t first, last;
    window_range(pl, window, first, last);
    for (std::size_t p = first; p < last; ++p) hits.push_back(pl.serials[p]);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  if (!agency_allowed) return hits.size();
  std::size_t n = 0;
  for (auto serial : hits) {
    auto ag = at(serial).agency;
    if (ag < agency_allowed->size() && (*agency_allowed)[ag]) ++n;
  }
  return n;
}

}  // namespace newspulse

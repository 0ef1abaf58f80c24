#include "newspulse/scoring.hpp"

#include <algorithm>
#include <deque>

#include "newspulse/errors.hpp"
#include "newspulse/parallel.hpp"

namespace newspulse {

TopAggregation parse_top_aggregation(std::string_view text) {
  if (text == "max") return TopAggregation::Max;
  if (text == "sum") return TopAggregation::Sum;
  throw InputError("unknown topicality aggregation: \"" + std::string(text) + "\"");
}

const char* to_string(TopAggregation agg) {
  return agg == TopAggregation::Max ? "max" : "sum";
}

namespace {

// history-source whitelist as a bitmap over interned agency ids
std::vector<char> build_allowed(const InvertedIndex& index,
                                const std::vector<std::string>& sources) {
  std::vector<char> allowed(index.agency_count(), 0);
  for (const auto& name : sources) {
    if (auto id = index.find_agency(name))
      if (*id < allowed.size()) allowed[*id] = 1;
  }
  return allowed;
}

NoveltyScore novelty_core(const InvertedIndex& index, const WeightedVector& vec,
                          const std::vector<std::uint32_t>& keyword_ids,
                          std::int64_t ts_ms, const ScoreParams& params,
                          const std::vector<char>* allowed,
                          InvertedIndex::DotScratch& scratch) {
  TimeWindow w = params.novelty_window(ts_ms);
  index.accumulate(vec, w, scratch);
  // candidates come back in serial (chronological) order, keeping the sum
  // canonical regardless of token posting layout
  index.keyword_window_serials(keyword_ids, w, scratch.serials);
  NoveltyScore out;
  for (auto serial : scratch.serials) {
    const auto& h = index.at(serial);
    if (allowed && !(h.agency < allowed->size() && (*allowed)[h.agency])) continue;
    ++out.window_count;
    auto slot = serial - index.begin_serial();
    if (!scratch.hit(slot)) continue;
    double c = scratch.dot[slot] / (vec.norm * h.vec.norm);
    out.value += c > 1.0 ? 1.0 : c;
  }
  return out;
}

TopicalityScore topicality_core(const InvertedIndex& index,
                                const WeightedVector& vec,
                                const std::vector<std::uint32_t>& keyword_ids,
                                std::int64_t ts_ms, std::uint32_t self_agency,
                                const ScoreParams& params,
                                const std::vector<char>* allowed,
                                InvertedIndex::DotScratch& scratch) {
  TimeWindow w = params.topicality_window(ts_ms);
  index.accumulate(vec, w, scratch);
  index.keyword_window_serials(keyword_ids, w, scratch.serials);
  std::vector<std::pair<std::uint32_t, double>> hits;  // (agency, cosine)
  for (auto serial : scratch.serials) {
    const auto& h = index.at(serial);
    if (h.agency == self_agency) continue;  // covers the article itself
    if (allowed && !(h.agency < allowed->size() && (*allowed)[h.agency])) continue;
    auto slot = serial - index.begin_serial();
    if (!scratch.hit(slot)) continue;
    double c = scratch.dot[slot] / (vec.norm * h.vec.norm);
    hits.emplace_back(h.agency, c > 1.0 ? 1.0 : c);
  }
  // group per agency, preserving chronological order within each group
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  TopicalityScore out;
  std::size_t i = 0;
  while (i < hits.size()) {
    std::uint32_t agency = hits[i].first;
    double agg = 0.0;
    bool first = true;
    for (; i < hits.size() && hits[i].first == agency; ++i) {
      if (params.top_aggregation == TopAggregation::Max)
        agg = first ? hits[i].second : std::max(agg, hits[i].second);
      else
        agg += hits[i].second;
      first = false;
    }
    out.value += agg;
    out.contributions.push_back({index.agency_name(agency), agg});
  }
  std::sort(out.contributions.begin(), out.contributions.end(),
            [](const auto& a, const auto& b) { return a.agency < b.agency; });
  return out;
}

std::vector<std::uint32_t> lookup_keywords(const InvertedIndex& index,
                                           const std::vector<std::string>& names) {
  std::vector<std::uint32_t> ids;
  ids.reserve(names.size());
  for (const auto& k : names)
    if (auto id = index.find_keyword(k)) ids.push_back(*id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

NoveltyScore novelty(const Article& article, const InvertedIndex& index,
                     const ScoreParams& params) {
  InvertedIndex::DotScratch scratch;
  auto vec = vectorize(article, index.table());
  auto kws = lookup_keywords(index, article.keywords);
  std::vector<char> allowed;
  const std::vector<char>* filter = nullptr;
  if (!params.history_sources.empty()) {
    allowed = build_allowed(index, params.history_sources);
    filter = &allowed;
  }
  return novelty_core(index, vec, kws, article.ts_ms, params, filter, scratch);
}

TopicalityScore topicality(const Article& article, const InvertedIndex& index,
                           const ScoreParams& params) {
  InvertedIndex::DotScratch scratch;
  auto vec = vectorize(article, index.table());
  auto kws = lookup_keywords(index, article.keywords);
  std::vector<char> allowed;
  const std::vector<char>* filter = nullptr;
  if (!params.history_sources.empty()) {
    allowed = build_allowed(index, params.history_sources);
    filter = &allowed;
  }
  // absent agency id can never collide with a stored one
  std::uint32_t self = index.find_agency(article.agency).value_or(UINT32_MAX);
  return topicality_core(index, vec, kws, article.ts_ms, self, params, filter,
                         scratch);
}

ClassifyResult classify(const std::vector<ScoreRecord>& records) {
  if (records.empty()) throw InputError("classify over an empty score list");
  ClassifyResult out;
  double nov_sum = 0.0, top_sum = 0.0;
  for (const auto& r : records) {
    nov_sum += r.novelty;
    top_sum += r.topicality;
  }
  out.nov_mean = nov_sum / double(records.size());
  out.top_mean = top_sum / double(records.size());
  out.nov_high.reserve(records.size());
  out.top_high.reserve(records.size());
  for (const auto& r : records) {
    out.nov_high.push_back(r.novelty >= out.nov_mean);
    out.top_high.push_back(r.topicality >= out.top_mean);
  }
  return out;
}

StreamStats score_stream(const std::function<std::optional<Article>()>& source,
                         const IdfTable& table, const StreamOptions& opts,
                         const std::function<void(ScoreRecord&&)>& sink) {
  if (opts.batch_size == 0) throw InputError("batch_size must be positive");
  const ScoreParams& P = opts.params;
  if (P.tau_ms <= 0 || P.top_halfwidth_ms < 0)
    throw InputError("nonpositive scoring windows");

  InvertedIndex index(table);
  StreamStats stats;

  struct Pending {
    std::uint32_t serial;
    ScoreRecord rec;
  };
  std::deque<Pending> pending;

  const bool source_filter = !P.history_sources.empty();
  std::vector<char> allowed;

  int workers = effective_workers(opts.workers);
  std::vector<InvertedIndex::DotScratch> scratch(workers);

  bool done = false;
  std::int64_t frontier = INT64_MIN;
  while (!done) {
    // read one batch, appending history as it comes
    std::size_t batch_start = pending.size();
    for (std::size_t got = 0; got < opts.batch_size; ++got) {
      auto a = source();
      if (!a) {
        done = true;
        break;
      }
      ++stats.read;
      frontier = a->ts_ms;
      if (!is_scorable(a->kind)) {
        ++stats.skipped_story;
        continue;
      }
      if (a->keywords.empty()) {
        ++stats.skipped_unkeyworded;
        continue;
      }
      auto serial = index.append(*a);
      ++stats.indexed;

      bool want = !opts.kind_filter || a->kind == *opts.kind_filter;
      if (want && !opts.keyword_filter.empty() &&
          std::find(a->keywords.begin(), a->keywords.end(),
                    opts.keyword_filter) == a->keywords.end())
        want = false;
      if (!want) {
        ++stats.skipped_filtered;
        continue;
      }
      Pending p;
      p.serial = serial;
      p.rec.id = a->id;
      p.rec.keyword =
          opts.keyword_filter.empty() ? a->keywords.front() : opts.keyword_filter;
      p.rec.agency = a->agency;
      p.rec.kind = a->kind;
      p.rec.ts_ms = a->ts_ms;
      pending.push_back(std::move(p));
    }
    stats.peak_live = std::max(stats.peak_live, index.live_count());
    if (source_filter && allowed.size() != index.agency_count())
      allowed = build_allowed(index, P.history_sources);
    const std::vector<char>* filter = source_filter ? &allowed : nullptr;

    // novelty per new batch entry; trailing windows are already complete
    std::size_t fresh = pending.size() - batch_start;
    parallel_for(fresh, workers, [&](std::size_t i, int w) {
      auto& p = pending[batch_start + i];
      const auto& st = index.at(p.serial);
      auto nov = novelty_core(index, st.vec, st.keywords, st.ts_ms, P, filter,
                              scratch[w]);
      p.rec.novelty = nov.value;
      p.rec.novelty_count = nov.window_count;
    });

    // finalize topicality for every record whose +half-width edge has passed
    std::size_t n_final = 0;
    while (n_final < pending.size() &&
           (done || pending[n_final].rec.ts_ms + P.top_halfwidth_ms < frontier))
      ++n_final;
    parallel_for(n_final, workers, [&](std::size_t i, int w) {
      auto& p = pending[i];
      const auto& st = index.at(p.serial);
      auto top = topicality_core(index, st.vec, st.keywords, st.ts_ms, st.agency,
                                 P, filter, scratch[w]);
      p.rec.topicality = top.value;
      p.rec.top_contributions = std::move(top.contributions);
    });
    for (std::size_t i = 0; i < n_final; ++i) {
      sink(std::move(pending.front().rec));
      pending.pop_front();
      ++stats.scored;
    }

    // evict everything no future novelty window or pending topicality
    // window can reach
    std::int64_t cutoff = frontier - P.tau_ms;
    if (!pending.empty())
      cutoff = std::min(cutoff, pending.front().rec.ts_ms - P.top_halfwidth_ms);
    index.evict_older_than(cutoff);
  }
  return stats;
}

}  // namespace newspulse

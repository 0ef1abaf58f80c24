#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "newspulse/article.hpp"
#include "newspulse/errors.hpp"
#include "newspulse/idf.hpp"
#include "newspulse/index.hpp"
#include "newspulse/scoring.hpp"
#include "newspulse/similarity.hpp"

using namespace newspulse;

namespace {

constexpr std::int64_t kMin = 60'000;

std::vector<Article> four_doc_corpus() {
  std::vector<Article> docs;
  docs.push_back(make_article("d1", "A", 1000, {"GM.N"}, EventKind::Headline,
                              "gm recall"));
  docs.push_back(make_article("d2", "A", 2000, {"GM.N"}, EventKind::Headline,
                              "gm profit"));
  docs.push_back(make_article("d3", "A", 3000, {"GM.N"}, EventKind::Headline,
                              "profit apple"));
  docs.push_back(make_article("d4", "A", 4000, {"GM.N"}, EventKind::Headline,
                              "apple recall"));
  return docs;
}

InvertedIndex index_over(const std::vector<Article>& docs, const IdfTable& table) {
  InvertedIndex index(table);
  for (const auto& d : docs) index.append(d);
  return index;
}

// Brute-force novelty: direct window scan + dense-free cosine via the
// production vectorizer but an independent pair loop.
double novelty_ref(const Article& q, const std::vector<Article>& history,
                   const IdfTable& table, std::int64_t tau_ms) {
  auto qv = vectorize(q, table);
  double sum = 0.0;
  for (const auto& h : history) {
    if (!(h.ts_ms > q.ts_ms - tau_ms && h.ts_ms < q.ts_ms)) continue;
    bool shares = false;
    for (const auto& k : h.keywords)
      shares |= std::find(q.keywords.begin(), q.keywords.end(), k) !=
                q.keywords.end();
    if (!shares) continue;
    double c = cosine(qv, vectorize(h, table));
    sum += c > 1.0 ? 1.0 : c;
  }
  return sum;
}

double topicality_ref(const Article& q, const std::vector<Article>& history,
                      const IdfTable& table, std::int64_t half_ms,
                      bool sum_mode = false) {
  auto qv = vectorize(q, table);
  std::map<std::string, double> per_agency;
  std::map<std::string, double> agency_sum;
  for (const auto& h : history) {
    if (h.agency == q.agency) continue;
    if (h.id == q.id) continue;
    if (h.ts_ms < q.ts_ms - half_ms || h.ts_ms > q.ts_ms + half_ms) continue;
    bool shares = false;
    for (const auto& k : h.keywords)
      shares |= std::find(q.keywords.begin(), q.keywords.end(), k) !=
                q.keywords.end();
    if (!shares) continue;
    double c = cosine(qv, vectorize(h, table));
    if (c > 1.0) c = 1.0;
    auto it = per_agency.find(h.agency);
    if (it == per_agency.end())
      per_agency[h.agency] = c;
    else
      it->second = std::max(it->second, c);
    agency_sum[h.agency] += c;
  }
  double total = 0.0;
  for (const auto& [agency, v] : sum_mode ? agency_sum : per_agency) total += v;
  return total;
}

std::vector<Article> random_stream(std::uint64_t seed, std::size_t n,
                                   int n_agencies = 4, int n_keywords = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Article> docs;
  std::int64_t ts = 1'000'000;
  for (std::size_t i = 0; i < n; ++i) {
    ts += std::int64_t(rng() % (20 * kMin));
    std::string text;
    auto len = 3 + rng() % 8;
    for (std::size_t j = 0; j < len; ++j) {
      auto rank = (unsigned)(std::pow(uni(rng), -1.1) - 1.0) % 400;
      text += "w" + std::to_string(rank) + " ";
    }
    auto kind = std::array{EventKind::Alert, EventKind::Headline,
                           EventKind::Title}[rng() % 3];
    docs.push_back(make_article(
        "s" + std::to_string(i), "A" + std::to_string(rng() % n_agencies), ts,
        {"K" + std::to_string(rng() % n_keywords)}, kind, text));
  }
  return docs;
}

}  // namespace

TEST_CASE("novelty: empty history scores zero") {
  auto docs = four_doc_corpus();
  auto table = build_idf(docs);
  InvertedIndex index(table);
  auto out = novelty(docs[0], index);
  CHECK(out.value == 0.0);
  CHECK(out.window_count == 0);
}

TEST_CASE("novelty: verbatim duplicate one minute earlier scores one") {
  std::vector<Article> docs;
  docs.push_back(make_article("h", "A", 10 * kMin, {"K"}, EventKind::Headline,
                              "alpha beta"));
  docs.push_back(make_article("q", "B", 11 * kMin, {"K"}, EventKind::Headline,
                              "alpha beta"));
  std::vector<Article> corpus = docs;
  corpus.push_back(make_article("pad", "A", 12 * kMin, {"K"},
                                EventKind::Headline, "other"));
  auto table = build_idf(corpus);
  auto index = index_over({docs[0]}, table);
  auto out = novelty(docs[1], index);
  CHECK(out.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.window_count == 1);
}

TEST_CASE("novelty: four-doc timeline pair gives one half") {
  auto docs = four_doc_corpus();
  auto table = build_idf(docs);
  std::vector<Article> timeline;
  timeline.push_back(make_article("h", "A", 100 * kMin, {"GM.N"},
                                  EventKind::Headline, "gm recall"));
  auto q = make_article("q", "A", 105 * kMin, {"GM.N"}, EventKind::Headline,
                        "gm profit");
  auto index = index_over(timeline, table);
  auto out = novelty(q, index);
  CHECK(std::abs(out.value - 0.5) < 1e-12);
}

TEST_CASE("novelty: window is strictly earlier and strictly inside tau") {
  std::vector<Article> corpus;
  corpus.push_back(make_article("pad", "A", 0, {"K"}, EventKind::Headline,
                                "other"));
  corpus.push_back(make_article("same", "A", 0, {"K"}, EventKind::Headline,
                                "alpha beta"));
  auto table = build_idf(corpus);
  ScoreParams params;
  const auto tau = params.tau_ms;
  const std::int64_t qts = tau + 500 * kMin;

  auto probe = [&](std::int64_t hist_ts) {
    InvertedIndex index(table);
    index.append(make_article("h", "A", hist_ts, {"K"}, EventKind::Headline,
                              "alpha beta"));
    auto q = make_article("q", "B", qts, {"K"}, EventKind::Headline,
                          "alpha beta");
    return novelty(q, index, params);
  };

  CHECK(probe(qts - tau).value == 0.0);          // exactly tau ago: outside
  CHECK(probe(qts - tau + 1).value > 0.99);      // just inside
  CHECK(probe(qts - 1).value > 0.99);            // newest possible history
  CHECK(probe(qts).value == 0.0);                // tie: topicality territory
  CHECK(probe(qts).window_count == 0);
}

TEST_CASE("novelty: monotone under added in-window history") {
  auto docs = random_stream(19, 120);
  std::vector<Article> sorted = docs;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(sorted);
  auto q = make_article("q", "QQ", sorted.back().ts_ms + kMin, {"K0", "K1", "K2"},
                        EventKind::Headline, sorted.front().text);
  InvertedIndex index(table);
  double prev = 0.0;
  for (const auto& d : sorted) {
    index.append(d);
    auto out = novelty(q, index);
    CHECK(out.value >= prev - 1e-12);
    prev = out.value;
  }
}

TEST_CASE("novelty and topicality: brute-force agreement on a random stream") {
  auto docs = random_stream(33, 250);
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  ScoreParams params;
  for (std::size_t i = 0; i < docs.size(); i += 7) {
    const auto& q = docs[i];
    auto nov = novelty(q, index, params);
    CHECK(std::abs(nov.value - novelty_ref(q, docs, table, params.tau_ms)) <
          1e-9);
    auto top = topicality(q, index, params);
    CHECK(std::abs(top.value -
                   topicality_ref(q, docs, table, params.top_halfwidth_ms)) <
          1e-9);
  }
}

TEST_CASE("topicality: no other agency in window scores zero") {
  std::vector<Article> docs;
  docs.push_back(make_article("a", "A", 10 * kMin, {"K"}, EventKind::Headline,
                              "alpha beta"));
  docs.push_back(make_article("b", "A", 11 * kMin, {"K"}, EventKind::Headline,
                              "alpha beta"));
  docs.push_back(make_article("pad", "B", 12 * kMin, {"K"},
                              EventKind::Headline, "other"));
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  auto out = topicality(docs[1], index);
  CHECK(out.value == 0.0);  // only same-agency history nearby
  CHECK(out.contributions.empty());
}

TEST_CASE("topicality: verbatim copy at another agency scores one") {
  std::vector<Article> docs;
  docs.push_back(make_article("a", "A", 10 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("b", "B", 10 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("pad", "C", 11 * kMin, {"K"},
                              EventKind::Headline, "other"));
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  auto out = topicality(docs[0], index);
  CHECK(out.value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(out.contributions.size() == 1);
  CHECK(out.contributions[0].agency == "B");
}

TEST_CASE("topicality: per-agency max then sum across three agencies") {
  // idf from the balanced corpus: every token df 2 of 4, weight ln 2, so
  // one shared token of two gives cosine 1/2 exactly
  auto table = build_idf(four_doc_corpus());
  // planted cosines 1.0 (B, verbatim), 0.5 (C), 0.5 (D) -> Top = 2.0
  std::vector<Article> docs;
  docs.push_back(make_article("d", "D", 99 * kMin, {"K"}, EventKind::Alert,
                              "apple recall"));
  docs.push_back(make_article("q", "A", 100 * kMin, {"K"}, EventKind::Alert,
                              "gm recall"));
  docs.push_back(make_article("b", "B", 100 * kMin, {"K"}, EventKind::Alert,
                              "gm recall"));
  docs.push_back(make_article("c", "C", 101 * kMin, {"K"}, EventKind::Alert,
                              "gm profit"));
  auto index = index_over(docs, table);
  auto out = topicality(docs[1], index);
  CHECK(std::abs(out.value - 2.0) < 1e-12);
  REQUIRE(out.contributions.size() == 3);
  CHECK(out.contributions[0].agency == "B");
  CHECK(out.contributions[1].agency == "C");
  CHECK(out.contributions[2].agency == "D");
  CHECK(std::abs(out.contributions[0].similarity - 1.0) < 1e-12);
  CHECK(std::abs(out.contributions[1].similarity - 0.5) < 1e-12);
  CHECK(std::abs(out.contributions[2].similarity - 0.5) < 1e-12);
}

TEST_CASE("topicality: window edges inclusive, beyond excluded") {
  std::vector<Article> corpus;
  corpus.push_back(make_article("pad", "A", 0, {"K"}, EventKind::Headline,
                                "other"));
  corpus.push_back(make_article("same", "A", 1, {"K"}, EventKind::Headline,
                                "alpha beta"));
  auto table = build_idf(corpus);
  ScoreParams params;
  const auto half = params.top_halfwidth_ms;
  const std::int64_t qts = 10 * half;

  auto probe = [&](std::int64_t other_ts) {
    std::vector<Article> docs;
    docs.push_back(make_article("h", "B", other_ts, {"K"}, EventKind::Alert,
                                "alpha beta"));
    auto q = make_article("q", "A", qts, {"K"}, EventKind::Alert, "alpha beta");
    auto index = index_over(docs, table);
    return topicality(q, index, params).value;
  };

  CHECK(probe(qts - half) > 0.99);      // left edge inclusive
  CHECK(probe(qts + half) > 0.99);      // right edge inclusive
  CHECK(probe(qts - half - 1) == 0.0);  // beyond
  CHECK(probe(qts + half + 1) == 0.0);
}

TEST_CASE("topicality: sum aggregation counts every window article") {
  std::vector<Article> docs;
  docs.push_back(make_article("q", "A", 100 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("b1", "B", 101 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("b2", "B", 102 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("pad", "C", 103 * kMin, {"K"}, EventKind::Alert,
                              "other"));
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  ScoreParams params;
  auto q = docs[0];
  CHECK(std::abs(topicality(q, index, params).value - 1.0) < 1e-12);
  params.top_aggregation = TopAggregation::Sum;
  CHECK(std::abs(topicality(q, index, params).value - 2.0) < 1e-12);
  // brute-force cross-check on a random stream
  auto stream = random_stream(71, 150);
  std::stable_sort(stream.begin(), stream.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto t2 = build_idf(stream);
  auto idx2 = index_over(stream, t2);
  for (std::size_t i = 0; i < stream.size(); i += 11) {
    auto got = topicality(stream[i], idx2, params).value;
    auto want = topicality_ref(stream[i], stream, t2,
                               params.top_halfwidth_ms, true);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("history_sources restricts both indicators") {
  std::vector<Article> docs;
  docs.push_back(make_article("h1", "B", 10 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("h2", "C", 11 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("q", "A", 12 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("pad", "A", 13 * kMin, {"K"}, EventKind::Alert,
                              "other"));
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  ScoreParams params;
  params.history_sources = {"B"};
  auto q = docs[2];
  CHECK(std::abs(novelty(q, index, params).value - 1.0) < 1e-12);
  CHECK(novelty(q, index, params).window_count == 1);
  CHECK(std::abs(topicality(q, index, params).value - 1.0) < 1e-12);
  REQUIRE(topicality(q, index, params).contributions.size() == 1);
  CHECK(topicality(q, index, params).contributions[0].agency == "B");
}

TEST_CASE("novelty bounded by window count") {
  auto docs = random_stream(91, 200);
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(docs);
  auto index = index_over(docs, table);
  for (std::size_t i = 0; i < docs.size(); i += 5) {
    auto out = novelty(docs[i], index);
    CHECK(out.value >= 0.0);
    CHECK(out.value <= double(out.window_count) + 1e-12);
  }
}

TEST_CASE("classify: boundary and trivial cases") {
  auto mk = [](double nov, double top) {
    ScoreRecord r;
    r.keyword = "K";
    r.novelty = nov;
    r.topicality = top;
    return r;
  };
  CHECK_THROWS_AS(classify({}), InputError);

  auto equal = classify({mk(2, 3), mk(2, 3), mk(2, 3)});
  for (bool b : equal.nov_high) CHECK(b);   // score == mean labels high
  for (bool b : equal.top_high) CHECK(b);

  auto pair = classify({mk(0, 1), mk(1, 0)});
  CHECK(!pair.nov_high[0]);
  CHECK(pair.nov_high[1]);
  CHECK(pair.top_high[0]);
  CHECK(!pair.top_high[1]);
}

TEST_CASE("classify: two-pass oracle on 100 synthetic scores") {
  std::mt19937_64 rng(5);
  std::vector<ScoreRecord> recs;
  for (int i = 0; i < 100; ++i) {
    ScoreRecord r;
    r.keyword = "K";
    r.novelty = double(rng() % 1000) / 100.0;
    r.topicality = double(rng() % 500) / 100.0;
    recs.push_back(r);
  }
  double nov_mean = 0.0, top_mean = 0.0;
  for (const auto& r : recs) {
    nov_mean += r.novelty;
    top_mean += r.topicality;
  }
  nov_mean /= double(recs.size());
  top_mean /= double(recs.size());
  auto got = classify(recs);
  CHECK(got.nov_mean == doctest::Approx(nov_mean).epsilon(1e-12));
  CHECK(got.top_mean == doctest::Approx(top_mean).epsilon(1e-12));
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(got.nov_high[i] == (recs[i].novelty >= nov_mean));
    CHECK(got.top_high[i] == (recs[i].topicality >= top_mean));
  }
}

TEST_CASE("score_stream: equals direct per-article scoring") {
  auto docs = random_stream(111, 400);
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(docs);

  StreamOptions opts;
  opts.workers = 2;
  std::size_t i = 0;
  std::vector<ScoreRecord> got;
  auto stats = score_stream(
      [&]() -> std::optional<Article> {
        if (i >= docs.size()) return std::nullopt;
        return docs[i++];
      },
      table, opts, [&](ScoreRecord&& r) { got.push_back(std::move(r)); });

  CHECK(stats.read == docs.size());
  CHECK(stats.scored == got.size());

  // full-corpus index; windows make stream eviction invisible to scores
  auto index = index_over(docs, table);
  std::map<std::string, const Article*> by_id;
  for (const auto& d : docs) by_id[d.id] = &d;
  REQUIRE(got.size() == docs.size());
  std::size_t pos = 0;
  for (const auto& d : docs) {
    // records come back in stream order
    CHECK(got[pos].id == d.id);
    ++pos;
  }
  for (const auto& r : got) {
    const auto& a = *by_id.at(r.id);
    auto nov = novelty(a, index, opts.params);
    auto top = topicality(a, index, opts.params);
    CHECK(r.novelty == doctest::Approx(nov.value).epsilon(1e-12));
    CHECK(r.topicality == doctest::Approx(top.value).epsilon(1e-12));
    CHECK(r.novelty_count == nov.window_count);
  }
}

TEST_CASE("score_stream: worker count and batch size do not change output") {
  auto docs = random_stream(131, 300);
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(docs);

  auto run = [&](int workers, std::size_t batch) {
    StreamOptions opts;
    opts.workers = workers;
    opts.batch_size = batch;
    std::size_t i = 0;
    std::vector<ScoreRecord> out;
    score_stream(
        [&]() -> std::optional<Article> {
          if (i >= docs.size()) return std::nullopt;
          return docs[i++];
        },
        table, opts, [&](ScoreRecord&& r) { out.push_back(std::move(r)); });
    return out;
  };

  auto base = run(1, 2048);
  for (auto [w, b] : {std::pair<int, std::size_t>{4, 7},
                      {3, 2048},
                      {2, 31}}) {
    auto other = run(w, b);
    REQUIRE(other.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(other[k].id == base[k].id);
      CHECK(other[k].novelty == base[k].novelty);
      CHECK(other[k].topicality == base[k].topicality);
    }
  }
}

TEST_CASE("score_stream: filters score selectively but keep history complete") {
  std::vector<Article> docs;
  // a STORY and an off-keyword article sit between two alerts; both are
  // excluded from scoring, the keyword article still shapes history
  docs.push_back(make_article("a1", "A", 10 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("st", "B", 11 * kMin, {"K"}, EventKind::Story,
                              "alpha beta"));
  docs.push_back(make_article("hd", "B", 12 * kMin, {"K"}, EventKind::Headline,
                              "alpha beta"));
  docs.push_back(make_article("off", "C", 13 * kMin, {"J"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("a2", "D", 14 * kMin, {"K"}, EventKind::Alert,
                              "alpha beta"));
  docs.push_back(make_article("pad", "A", 15 * kMin, {"K"}, EventKind::Alert,
                              "other"));
  auto table = build_idf(docs);

  StreamOptions opts;
  opts.kind_filter = EventKind::Alert;
  opts.keyword_filter = "K";
  opts.workers = 1;
  std::size_t i = 0;
  std::vector<ScoreRecord> got;
  auto stats = score_stream(
      [&]() -> std::optional<Article> {
        if (i >= docs.size()) return std::nullopt;
        return docs[i++];
      },
      table, opts, [&](ScoreRecord&& r) { got.push_back(std::move(r)); });

  CHECK(stats.skipped_story == 1);
  CHECK(stats.skipped_filtered >= 2);  // headline kind + off-keyword alert
  REQUIRE(got.size() == 3);
  CHECK(got[0].id == "a1");
  CHECK(got[1].id == "a2");
  CHECK(got[2].id == "pad");
  // a2's novelty sees a1 plus the unscored-but-indexed headline, not the story
  CHECK(got[1].novelty_count == 2);
  CHECK(got[1].novelty == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("score_stream: unkeyworded articles are counted and skipped") {
  std::vector<Article> docs;
  docs.push_back(make_article("k", "A", 10 * kMin, {"K"}, EventKind::Alert,
                              "alpha"));
  docs.push_back(make_article("nk", "A", 11 * kMin, {}, EventKind::Alert,
                              "alpha"));
  auto table = build_idf(docs);
  StreamOptions opts;
  opts.workers = 1;
  std::size_t i = 0;
  std::vector<ScoreRecord> got;
  auto stats = score_stream(
      [&]() -> std::optional<Article> {
        if (i >= docs.size()) return std::nullopt;
        return docs[i++];
      },
      table, opts, [&](ScoreRecord&& r) { got.push_back(std::move(r)); });
  CHECK(stats.skipped_unkeyworded == 1);
  CHECK(got.size() == 1);
}

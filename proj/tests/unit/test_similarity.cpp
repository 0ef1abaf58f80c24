#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "newspulse/article.hpp"
#include "newspulse/errors.hpp"
#include "newspulse/idf.hpp"
#include "newspulse/index.hpp"
#include "newspulse/simcurve.hpp"
#include "newspulse/similarity.hpp"

using namespace newspulse;

namespace {

// Dense reference: explicit full-vocabulary vectors and a plain loop dot.
// Independent of the sparse merge-join path under test.
struct DenseVec {
  std::vector<double> w;  // indexed by dense vocab position
};

struct DenseOracle {
  std::vector<std::string> vocab;  // sorted
  std::map<std::string, std::size_t> pos;

  explicit DenseOracle(const IdfTable& table) {
    for (std::uint32_t id = 0; id < table.vocab_size(); ++id)
      vocab.push_back(table.token_text(id));
    std::sort(vocab.begin(), vocab.end());
    for (std::size_t i = 0; i < vocab.size(); ++i) pos[vocab[i]] = i;
  }

  DenseVec vec(const Article& a, const IdfTable& table) const {
    DenseVec v;
    v.w.assign(vocab.size(), 0.0);
    for (const auto& t : a.tokens) {
      auto idf = table.idf(t);
      if (!idf || *idf <= 0.0) continue;
      v.w[pos.at(t)] = *idf;
    }
    return v;
  }

  static double cosine(const DenseVec& a, const DenseVec& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.w.size(); ++i) {
      dot += a.w[i] * b.w[i];
      na += a.w[i] * a.w[i];
      nb += b.w[i] * b.w[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
  }
};

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

// Zipf-flavored random corpus: token rank from a power transform, so a few
// tokens are common and most are rare.
std::vector<Article> random_corpus(std::uint64_t seed, std::size_t n,
                                   std::int64_t spacing_ms = 60'000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Article> docs;
  const char* agencies[] = {"A1", "A2", "A3"};
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    auto len = 4 + rng() % 10;
    for (std::size_t j = 0; j < len; ++j) {
      auto rank = (unsigned)(std::pow(uni(rng), -1.1) - 1.0) % 1500;
      text += "w" + std::to_string(rank) + " ";
    }
    docs.push_back(make_article("r" + std::to_string(i), agencies[rng() % 3],
                                std::int64_t(i) * spacing_ms +
                                    std::int64_t(rng() % 50'000),
                                {"K"}, EventKind::Headline, text));
  }
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  return docs;
}

}  // namespace

TEST_CASE("vectorize: four-doc hand values") {
  auto docs = four_doc_corpus();
  auto table = build_idf(docs);
  auto v = vectorize(docs[0], table);  // {gm, recall}
  REQUIRE(v.size() == 2);
  const double ln2 = std::log(2.0);
  CHECK(v.weights[0] == doctest::Approx(ln2).epsilon(1e-15));
  CHECK(v.weights[1] == doctest::Approx(ln2).epsilon(1e-15));
  CHECK(v.norm == doctest::Approx(ln2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("vectorize: all-zero-idf article gives empty vector") {
  std::vector<Article> docs;
  docs.push_back(make_article("a", "A", 1, {"K"}, EventKind::Headline, "only"));
  docs.push_back(make_article("b", "A", 2, {"K"}, EventKind::Headline, "only"));
  auto table = build_idf(docs);
  auto v = vectorize(docs[0], table);
  CHECK(v.empty());
  CHECK(v.norm == 0.0);
  CHECK(cosine(v, v) == 0.0);
}

TEST_CASE("vectorize: norm^2 equals sum of squared weights") {
  auto docs = random_corpus(5, 100);
  auto table = build_idf(docs);
  for (const auto& a : docs) {
    auto v = vectorize(a, table);
    double s = 0.0;
    for (double w : v.weights) s += w * w;
    if (s == 0.0)
      CHECK(v.norm == 0.0);
    else
      CHECK(std::abs(v.norm * v.norm - s) / s < 1e-12);
  }
}

TEST_CASE("vectorize: dense reference agrees on every nonzero coordinate") {
  auto docs = random_corpus(17, 200);
  auto table = build_idf(docs);
  DenseOracle oracle(table);
  for (const auto& a : docs) {
    auto sparse = vectorize(a, table);
    auto dense = oracle.vec(a, table);
    std::size_t nonzero = 0;
    for (double w : dense.w) nonzero += w > 0.0;
    REQUIRE(sparse.size() == nonzero);
    for (std::size_t i = 0; i < sparse.size(); ++i) {
      auto& tok = table.token_text(sparse.ids[i]);
      CHECK(sparse.weights[i] == dense.w[oracle.pos.at(tok)]);
    }
  }
}

TEST_CASE("cosine: hand corpus pair is exactly one half") {
  auto docs = four_doc_corpus();
  auto table = build_idf(docs);
  auto a = vectorize(docs[0], table);
  auto b = vectorize(docs[1], table);
  CHECK(std::abs(cosine(a, b) - 0.5) < 1e-12);
}

TEST_CASE("cosine: identical vectors give 1, disjoint give 0") {
  auto docs = random_corpus(23, 50);
  auto table = build_idf(docs);
  for (const auto& d : docs) {
    auto v = vectorize(d, table);
    if (v.empty()) continue;
    CHECK(std::abs(cosine(v, v) - 1.0) < 1e-12);
  }
  auto x = vectorize_tokens({"w1", "w2"}, table);
  auto y = vectorize_tokens({"w3", "w4"}, table);
  if (!x.empty() && !y.empty()) CHECK(cosine(x, y) == 0.0);
}

TEST_CASE("cosine: symmetry exact, bounds, dense agreement") {
  auto docs = random_corpus(31, 300);
  auto table = build_idf(docs);
  DenseOracle oracle(table);
  std::vector<WeightedVector> vecs;
  std::vector<DenseVec> dense;
  for (const auto& d : docs) {
    vecs.push_back(vectorize(d, table));
    dense.push_back(oracle.vec(d, table));
  }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 3000; ++trial) {
    auto i = rng() % docs.size(), j = rng() % docs.size();
    double ab = cosine(vecs[i], vecs[j]);
    CHECK(cosine(vecs[j], vecs[i]) == ab);  // bitwise symmetry
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(std::abs(ab - DenseOracle::cosine(dense[i], dense[j])) < 1e-12);
  }
}

TEST_CASE("cosine: scale invariance of the weight table") {
  auto docs = random_corpus(41, 80);
  auto table = build_idf(docs);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = vectorize(docs[rng() % docs.size()], table);
    auto b = vectorize(docs[rng() % docs.size()], table);
    double base = cosine(a, b);
    for (double k : {3.7, 0.001, 250.0}) {
      auto sa = a, sb = b;
      for (auto& w : sa.weights) w *= k;
      sa.norm *= k;
      for (auto& w : sb.weights) w *= k;
      sb.norm *= k;
      CHECK(std::abs(cosine(sa, sb) - base) < 1e-12);
    }
  }
}

TEST_CASE("index: append is timestamp-monotone, ids resolve") {
  auto docs = random_corpus(2, 50);
  auto table = build_idf(docs);
  InvertedIndex index(table);
  for (auto& d : docs) index.append(d);
  CHECK(index.live_count() == docs.size());
  auto backwards = docs.front();
  backwards.ts_ms = docs.back().ts_ms - 1;
  CHECK_THROWS_AS(index.append(backwards), InputError);
}

TEST_CASE("query_candidates: trivial cases") {
  auto docs = four_doc_corpus();
  auto table = build_idf(docs);
  InvertedIndex index(table);
  for (auto& d : docs) index.append(d);
  TimeWindow all{0, 10'000};

  auto nothing = make_article("q", "Q", 2500, {"GM.N"}, EventKind::Headline,
                              "zzz yyy");
  CHECK(index.query_candidates(nothing, all).empty());

  auto dup = make_article("q2", "Q", 2500, {"GM.N"}, EventKind::Headline,
                          "gm recall");
  auto got = index.query_candidates(dup, all);
  CHECK(std::find(got.begin(), got.end(), "d1") != got.end());
}

TEST_CASE("query_candidates: equals brute-force nonzero-similarity scan") {
  auto docs = random_corpus(55, 1000);
  auto table = build_idf(docs);
  DenseOracle oracle(table);
  InvertedIndex index(table);
  for (auto& d : docs) index.append(d);

  std::mt19937_64 rng(8);
  for (int q = 0; q < 100; ++q) {
    const auto& query = docs[rng() % docs.size()];
    auto qd = oracle.vec(query, table);
    std::int64_t lo = query.ts_ms - 3'000'000 + std::int64_t(rng() % 1'000'000);
    std::int64_t hi = lo + 2'000'000;
    std::set<std::string> brute;
    for (const auto& d : docs) {
      if (d.ts_ms < lo || d.ts_ms > hi) continue;
      if (DenseOracle::cosine(qd, oracle.vec(d, table)) > 0.0) brute.insert(d.id);
    }
    auto got = index.query_candidates(query, {lo, hi});
    std::set<std::string> got_set(got.begin(), got.end());
    // candidates promise a superset of nonzero-cosine articles; with binary
    // idf>0 weights shared-token implies nonzero cosine, so the sets coincide
    CHECK(got_set == brute);
  }
}

TEST_CASE("index accumulate equals merge-join dot bit for bit") {
  auto docs = random_corpus(66, 400);
  auto table = build_idf(docs);
  InvertedIndex index(table);
  for (auto& d : docs) index.append(d);
  InvertedIndex::DotScratch scratch;
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& query = docs[rng() % docs.size()];
    auto qv = vectorize(query, table);
    TimeWindow w{query.ts_ms - 2'000'000, query.ts_ms + 2'000'000};
    scratch.begin(index.end_serial() - index.begin_serial());
    index.accumulate(qv, w, scratch);
    auto [first, last] = index.window_serial_range(w);
    for (auto serial = first; serial < last; ++serial) {
      const auto& h = index.at(serial);
      double ref = dot(qv, h.vec);
      auto slot = serial - index.begin_serial();
      if (scratch.hit(slot))
        CHECK(scratch.dot[slot] == ref);
      else
        CHECK(ref == 0.0);
    }
  }
}

TEST_CASE("eviction drops old articles and keeps queries correct") {
  auto docs = random_corpus(77, 200);
  auto table = build_idf(docs);
  InvertedIndex index(table);
  for (auto& d : docs) index.append(d);
  auto cutoff = docs[100].ts_ms;
  index.evict_older_than(cutoff);
  std::size_t expect = 0;
  for (const auto& d : docs) expect += d.ts_ms >= cutoff;
  CHECK(index.live_count() == expect);
  const auto& probe = docs[150];
  auto got = index.query_candidates(probe, {0, docs.back().ts_ms});
  for (const auto& id : got) {
    auto it = std::find_if(docs.begin(), docs.end(),
                           [&](const Article& a) { return a.id == id; });
    REQUIRE(it != docs.end());
    CHECK(it->ts_ms >= cutoff);
  }
}

TEST_CASE("auto_similarity: identical articles make every nonempty bin 1") {
  std::vector<Article> sames;
  for (int i = 0; i < 30; ++i)
    sames.push_back(make_article("s" + std::to_string(i), "A",
                                 std::int64_t(i) * 600'000, {"K"},
                                 EventKind::Headline, "alpha beta gamma"));
  // pad the idf corpus so the shared tokens keep nonzero weight
  std::vector<Article> corpus = sames;
  for (int i = 0; i < 10; ++i)
    corpus.push_back(make_article("p" + std::to_string(i), "A",
                                  30 * 600'000 + std::int64_t(i), {"K"},
                                  EventKind::Headline,
                                  "other" + std::to_string(i)));
  auto table = build_idf(corpus);
  auto curve = auto_similarity(sames, table);
  bool any = false;
  for (const auto& b : curve.bins) {
    if (b.pairs == 0) continue;
    any = true;
    CHECK(b.mean_sim == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(any);
}

TEST_CASE("auto_similarity: pairwise-disjoint articles make every bin 0") {
  std::vector<Article> docs;
  for (int i = 0; i < 20; ++i)
    docs.push_back(make_article("d" + std::to_string(i), "A",
                                std::int64_t(i) * 120'000, {"K"},
                                EventKind::Headline,
                                "u" + std::to_string(2 * i) + " u" +
                                    std::to_string(2 * i + 1)));
  auto table = build_idf(docs);
  auto curve = auto_similarity(docs, table);
  bool any = false;
  for (const auto& b : curve.bins)
    if (b.pairs > 0) {
      any = true;
      CHECK(b.mean_sim == 0.0);
    }
  CHECK(any);
}

TEST_CASE("auto_similarity: uncapped curve equals all-pairs oracle") {
  auto docs = random_corpus(88, 200, 30'000);
  auto table = build_idf(docs);
  DenseOracle oracle(table);

  AutoSimOptions opts;
  opts.pair_cap = 0;  // exact
  auto curve = auto_similarity(docs, table, opts);

  // brute force: every ordered pair i<j, bin by forward lag
  std::vector<double> sum(curve.bins.size(), 0.0);
  std::vector<std::uint64_t> count(curve.bins.size(), 0);
  std::vector<DenseVec> dense;
  for (const auto& d : docs) dense.push_back(oracle.vec(d, table));
  for (std::size_t i = 0; i < docs.size(); ++i)
    for (std::size_t j = i + 1; j < docs.size(); ++j) {
      auto lag = docs[j].ts_ms - docs[i].ts_ms;
      int bin = opts.bins.find(lag);
      if (bin < 0) continue;
      sum[std::size_t(bin)] += DenseOracle::cosine(dense[i], dense[j]);
      ++count[std::size_t(bin)];
    }
  REQUIRE(curve.bins.size() == count.size());
  for (std::size_t k = 0; k < count.size(); ++k) {
    CHECK(curve.bins[k].pairs == count[k]);
    if (count[k] > 0)
      CHECK(std::abs(curve.bins[k].mean_sim - sum[k] / double(count[k])) <
            1e-12);
  }
}

TEST_CASE("auto_similarity: capped sampling is deterministic and worker-stable") {
  auto docs = random_corpus(99, 500, 5'000);
  auto table = build_idf(docs);
  AutoSimOptions opts;
  opts.pair_cap = 50;
  opts.seed = 1234;
  opts.workers = 1;
  auto a = auto_similarity(docs, table, opts);
  opts.workers = 4;
  auto b = auto_similarity(docs, table, opts);
  auto c = auto_similarity(docs, table, opts);
  auto same = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  REQUIRE(a.bins.size() == b.bins.size());
  for (std::size_t k = 0; k < a.bins.size(); ++k) {
    CHECK(same(a.bins[k].mean_sim, b.bins[k].mean_sim));
    CHECK(a.bins[k].pairs == b.bins[k].pairs);
    CHECK(same(b.bins[k].mean_sim, c.bins[k].mean_sim));
  }
  // thinning targets the cap in expectation; populous bins must land near it
  opts.pair_cap = 0;
  auto full = auto_similarity(docs, table, opts);
  for (std::size_t k = 0; k < a.bins.size(); ++k) {
    if (full.bins[k].pairs > 500) {
      CHECK(a.bins[k].pairs < 120);
      CHECK(a.bins[k].pairs > 10);
    }
  }
}

TEST_CASE("cross_similarity: verbatim copies at zero lag peak at 1") {
  std::vector<Article> ref, oth;
  for (int i = 0; i < 10; ++i) {
    auto ts = std::int64_t(i) * 3'600'000;
    ref.push_back(make_article("r" + std::to_string(i), "R", ts, {"K"},
                               EventKind::Alert,
                               "story token" + std::to_string(i)));
    oth.push_back(make_article("o" + std::to_string(i), "O", ts, {"K"},
                               EventKind::Alert,
                               "story token" + std::to_string(i)));
  }
  std::vector<Article> all = ref;
  all.insert(all.end(), oth.begin(), oth.end());
  auto table = build_idf(all);
  auto curve = cross_similarity(ref, oth, table);
  bool found = false;
  for (const auto& b : curve.bins) {
    if (!(b.lo_min <= 0.0 && 0.0 < b.hi_min)) continue;
    found = true;
    CHECK(b.pairs >= 10);
    CHECK(b.mean_sim == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(found);
}

TEST_CASE("cross_similarity: no pair within the lag span leaves all bins empty") {
  std::vector<Article> ref, oth;
  ref.push_back(make_article("r", "R", 0, {"K"}, EventKind::Alert, "a b"));
  oth.push_back(make_article("o", "O", 10LL * 3600'000, {"K"}, EventKind::Alert,
                             "a b"));
  auto table = build_idf({ref[0], oth[0]});
  auto curve = cross_similarity(ref, oth, table);
  for (const auto& b : curve.bins) CHECK(b.pairs == 0);
}

TEST_CASE("cross_similarity: planted +5 min copies match the all-pairs oracle") {
  std::mt19937_64 rng(3);
  std::vector<Article> ref, oth;
  for (int i = 0; i < 60; ++i) {
    auto ts = std::int64_t(i) * 7'200'000 + std::int64_t(rng() % 60'000);
    std::string text = "body w" + std::to_string(rng() % 40) + " w" +
                       std::to_string(rng() % 40) + " uniq" + std::to_string(i);
    ref.push_back(make_article("r" + std::to_string(i), "R", ts, {"K"},
                               EventKind::Alert, text));
    oth.push_back(make_article("o" + std::to_string(i), "O", ts + 300'000,
                               {"K"}, EventKind::Alert, text));
  }
  std::vector<Article> all = ref;
  all.insert(all.end(), oth.begin(), oth.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Article& a, const Article& b) { return a.ts_ms < b.ts_ms; });
  auto table = build_idf(all);
  DenseOracle oracle(table);

  auto curve = cross_similarity(ref, oth, table);

  CrossSimOptions opts;  // defaults used above
  std::vector<double> sum(curve.bins.size(), 0.0);
  std::vector<std::uint64_t> count(curve.bins.size(), 0);
  for (const auto& r : ref)
    for (const auto& o : oth) {
      int bin = opts.bins.find(o.ts_ms - r.ts_ms);
      if (bin < 0) continue;
      sum[std::size_t(bin)] +=
          DenseOracle::cosine(oracle.vec(r, table), oracle.vec(o, table));
      ++count[std::size_t(bin)];
    }
  double best = -1.0;
  std::size_t best_bin = 0;
  for (std::size_t k = 0; k < curve.bins.size(); ++k) {
    CHECK(curve.bins[k].pairs == count[k]);
    if (count[k] > 0) {
      CHECK(std::abs(curve.bins[k].mean_sim - sum[k] / double(count[k])) < 1e-12);
      if (curve.bins[k].mean_sim > best) {
        best = curve.bins[k].mean_sim;
        best_bin = k;
      }
    }
  }
  CHECK(curve.bins[best_bin].lo_min == doctest::Approx(5.0));
}

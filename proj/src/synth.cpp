#include "newspulse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <unordered_map>

#include <json.hpp>

#include "newspulse/errors.hpp"
#include "newspulse/jsonl.hpp"
#include "newspulse/rng.hpp"
#include "newspulse/scoring.hpp"

namespace newspulse {

namespace {

// substream tags keep the generator's random draws independent per purpose
constexpr std::uint64_t kClusterStream = 0xC1;
constexpr std::uint64_t kTokenStream = 0x70;
constexpr std::uint64_t kDateStream = 0xBA;
constexpr std::uint64_t kMinuteStream = 0xBB;
constexpr std::uint64_t kCurveStream = 0x5A;

struct Member {
  std::uint32_t member_idx = 0;
  std::uint32_t chain_index = 0;
  std::int32_t copy_of = -1;  // member_idx of the copied article (always 0)
  std::int64_t ts = 0;
  std::uint32_t agency = 0;
  EventKind kind = EventKind::Alert;
};

struct Cluster {
  std::uint64_t idx = 0;
  std::uint32_t keyword = 0;
  std::vector<Member> members;  // member 0 is the head
};

std::string agency_label(std::uint32_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "A%02u", idx + 1);
  return buf;
}

std::string keyword_label(std::uint32_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "K%02u.N", idx + 1);
  return buf;
}

std::string article_id(std::uint64_t serial) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "a%07llu", (unsigned long long)serial);
  return buf;
}

Cluster gen_cluster(const SynthSpec& spec, std::uint64_t c) {
  auto rng = make_rng(substream(spec.seed, kClusterStream, c));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Cluster cl;
  cl.idx = c;
  cl.keyword =
      std::uniform_int_distribution<std::uint32_t>(0, spec.n_keywords - 1)(rng);

  Member head;
  head.ts = spec.start_ts_ms +
            std::uniform_int_distribution<std::int64_t>(0, spec.horizon_ms - 1)(rng);
  head.agency =
      std::uniform_int_distribution<std::uint32_t>(0, spec.n_agencies - 1)(rng);
  cl.members.push_back(head);

  // all-or-none copying keeps "copied everywhere" vs "copied nowhere" crisp
  if (unit(rng) < spec.copy_p) {
    for (std::uint32_t j = 0; j < spec.n_agencies; ++j) {
      if (j == head.agency) continue;
      Member m;
      m.member_idx = std::uint32_t(cl.members.size());
      m.copy_of = 0;
      m.ts = head.ts + std::uniform_int_distribution<std::int64_t>(
                           0, spec.copy_lag_max_ms)(rng);
      m.agency = j;
      cl.members.push_back(m);
    }
  }

  std::int64_t prev = head.ts;
  for (std::uint32_t k = 1; k <= spec.chain_max; ++k) {
    if (unit(rng) >= spec.chain_continue_p) break;
    prev += std::uniform_int_distribution<std::int64_t>(
        spec.followup_lag_min_ms, spec.followup_lag_max_ms)(rng);
    Member m;
    m.member_idx = std::uint32_t(cl.members.size());
    m.chain_index = k;
    m.ts = prev;
    m.agency =
        std::uniform_int_distribution<std::uint32_t>(0, spec.n_agencies - 1)(rng);
    m.kind = (rng() & 1) ? EventKind::Headline : EventKind::Title;
    cl.members.push_back(m);
  }
  return cl;
}

// ascending distinct values from [0, n)
std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k,
                                           std::mt19937_64& rng) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::uint32_t t = n - k; t < n; ++t) {
    auto r = std::uniform_int_distribution<std::uint32_t>(0, t)(rng);
    auto it = std::lower_bound(out.begin(), out.end(), r);
    if (it != out.end() && *it == r) {
      it = std::lower_bound(out.begin(), out.end(), t);
      out.insert(it, t);
    } else {
      out.insert(it, r);
    }
  }
  return out;
}

struct ZipfTable {
  std::vector<double> cdf;
  ZipfTable(std::uint32_t n, double s) {
    cdf.resize(n);
    double acc = 0.0;
    for (std::uint32_t r = 0; r < n; ++r) {
      acc += std::pow(double(r + 1), -s);
      cdf[r] = acc;
    }
    for (auto& v : cdf) v /= acc;
  }
  std::uint32_t draw(std::mt19937_64& rng) const {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return std::uint32_t(it - cdf.begin());
  }
};

// Token indices for one member, ascending. Namespaced mode: the head owns
// [0, T); follow-up m keeps a sampled base subset and adds fresh indices from
// [m*T, m*T + fresh), disjoint per member. Shared mode: Zipf-ranked draws
// from the global vocabulary. Copies reuse the head's set verbatim.
std::vector<std::uint32_t> member_tokens(const SynthSpec& spec,
                                         const ZipfTable* zipf,
                                         std::uint64_t cluster,
                                         const Member& m) {
  const std::uint32_t T = spec.tokens_per_article;
  auto head_tokens = [&]() -> std::vector<std::uint32_t> {
    if (!zipf) {
      std::vector<std::uint32_t> out(T);
      for (std::uint32_t i = 0; i < T; ++i) out[i] = i;
      return out;
    }
    auto rng = make_rng(substream(spec.seed, kTokenStream, cluster, 0));
    std::vector<std::uint32_t> out;
    while (out.size() < T) {
      auto t = zipf->draw(rng);
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  if (m.copy_of >= 0 || m.member_idx == 0) return head_tokens();

  auto rng = make_rng(substream(spec.seed, kTokenStream, cluster, m.member_idx));
  auto n_base = std::uint32_t(
      std::clamp<long long>(std::llround(spec.cluster_overlap * T), 0, T));
  std::vector<std::uint32_t> out;
  if (!zipf) {
    out = sample_distinct(T, n_base, rng);
    for (std::uint32_t i = 0; i < T - n_base; ++i)
      out.push_back(m.member_idx * T + i);
    return out;  // base < T <= fresh, already ascending
  }
  auto head = head_tokens();
  for (auto pos : sample_distinct(T, n_base, rng)) out.push_back(head[pos]);
  std::sort(out.begin(), out.end());
  while (out.size() < T) {
    auto t = zipf->draw(rng);
    auto it = std::lower_bound(out.begin(), out.end(), t);
    if (it == out.end() || *it != t) out.insert(it, t);
  }
  return out;
}

std::string token_text(const SynthSpec& spec, std::uint64_t cluster,
                       const std::vector<std::uint32_t>& tokens) {
  std::string text;
  char buf[40];
  for (auto t : tokens) {
    if (!text.empty()) text.push_back(' ');
    if (spec.namespaced_vocab)
      std::snprintf(buf, sizeof(buf), "c%lluw%u", (unsigned long long)cluster, t);
    else
      std::snprintf(buf, sizeof(buf), "w%u", t);
    text += buf;
  }
  return text;
}

struct Predictions {
  std::vector<double> nov, top;
};

// In-cluster enumeration under default scoring parameters. Valid because
// namespaced vocabularies make every cross-cluster cosine exactly zero, and
// because idf of a cluster-local token depends only on in-cluster document
// frequency and the global article count.
Predictions predict_cluster(const SynthSpec& spec, const Cluster& cl,
                            const std::vector<std::vector<std::uint32_t>>& sets,
                            std::uint64_t total_articles) {
  const ScoreParams params;  // predictions pin the defaults
  const std::size_t n = cl.members.size();

  std::unordered_map<std::uint32_t, std::uint32_t> df;
  for (const auto& s : sets)
    for (auto t : s) ++df[t];
  std::unordered_map<std::uint32_t, double> idf;
  idf.reserve(df.size());
  for (auto [t, d] : df)
    idf[t] = std::log(double(total_articles) / double(d));

  // weighted vectors over the cluster-local token space; zero-idf terms are
  // dropped exactly as vectorization does
  std::vector<std::vector<std::pair<std::uint32_t, double>>> vecs(n);
  std::vector<double> norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (auto t : sets[i]) {
      double w = idf[t];
      if (w <= 0.0) continue;
      vecs[i].emplace_back(t, w);
      sq += w * w;
    }
    norm[i] = std::sqrt(sq);
  }
  auto cos = [&](std::size_t a, std::size_t b) {
    if (norm[a] == 0.0 || norm[b] == 0.0) return 0.0;
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < vecs[a].size() && j < vecs[b].size()) {
      if (vecs[a][i].first < vecs[b][j].first) ++i;
      else if (vecs[a][i].first > vecs[b][j].first) ++j;
      else {
        acc += vecs[a][i].second * vecs[b][j].second;
        ++i;
        ++j;
      }
    }
    double c = acc / (norm[a] * norm[b]);
    return c > 1.0 ? 1.0 : c;
  };

  // chronological member order with the same tie-break the emitted stream
  // uses (timestamp, then member index)
  std::vector<std::size_t> chrono(n);
  for (std::size_t i = 0; i < n; ++i) chrono[i] = i;
  std::sort(chrono.begin(), chrono.end(), [&](std::size_t a, std::size_t b) {
    if (cl.members[a].ts != cl.members[b].ts) return cl.members[a].ts < cl.members[b].ts;
    return cl.members[a].member_idx < cl.members[b].member_idx;
  });

  Predictions out;
  out.nov.assign(n, 0.0);
  out.top.assign(n, 0.0);
  for (std::size_t mi = 0; mi < n; ++mi) {
    const auto& m = cl.members[mi];
    auto nw = params.novelty_window(m.ts);
    for (auto hi : chrono) {
      const auto& h = cl.members[hi];
      if (h.ts < nw.lo_ms || h.ts > nw.hi_ms) continue;
      out.nov[mi] += cos(mi, hi);
    }
    auto tw = params.topicality_window(m.ts);
    for (std::uint32_t ag = 0; ag < spec.n_agencies; ++ag) {
      if (ag == m.agency) continue;
      double best = 0.0;
      for (std::size_t hi = 0; hi < n; ++hi) {
        const auto& h = cl.members[hi];
        if (h.agency != ag || h.ts < tw.lo_ms || h.ts > tw.hi_ms) continue;
        best = std::max(best, cos(mi, hi));
      }
      out.top[mi] += best;
    }
  }
  return out;
}

struct Plan {
  std::vector<Cluster> clusters;
  struct Slot {
    std::int64_t ts;
    std::uint32_t cluster;
    std::uint32_t member;
  };
  std::vector<Slot> order;
};

Plan make_plan(const SynthSpec& spec) {
  Plan plan;
  std::uint64_t budget = spec.n_articles;
  for (std::uint64_t c = 0; budget > 0; ++c) {
    auto cl = gen_cluster(spec, c);
    if (cl.members.size() > budget) cl.members.resize(budget);
    budget -= cl.members.size();
    plan.clusters.push_back(std::move(cl));
  }
  plan.order.reserve(spec.n_articles);
  for (const auto& cl : plan.clusters)
    for (const auto& m : cl.members)
      plan.order.push_back({m.ts, std::uint32_t(cl.idx), m.member_idx});
  std::sort(plan.order.begin(), plan.order.end(), [](const auto& a, const auto& b) {
    if (a.ts != b.ts) return a.ts < b.ts;
    if (a.cluster != b.cluster) return a.cluster < b.cluster;
    return a.member < b.member;
  });
  return plan;
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& why) { throw InputError("synth spec: " + why); };
  if (n_articles == 0) fail("n_articles must be positive");
  if (n_agencies == 0) fail("n_agencies must be positive");
  if (n_keywords == 0) fail("n_keywords must be positive");
  if (tokens_per_article == 0) fail("tokens_per_article must be positive");
  if (cluster_overlap < 0.0 || cluster_overlap > 1.0)
    fail("cluster_overlap must lie in [0,1]");
  if (chain_continue_p < 0.0 || chain_continue_p >= 1.0)
    fail("chain_continue_p must lie in [0,1)");
  if (copy_p < 0.0 || copy_p > 1.0) fail("copy_p must lie in [0,1]");
  if (!namespaced_vocab) {
    if (vocab_size < tokens_per_article * 4)
      fail("vocabulary too small for token draws");
    if (!(zipf_exponent > 0)) fail("zipf_exponent must be positive");
  }
  if (copy_lag_max_ms < 0) fail("copy_lag_max_ms must be nonnegative");
  if (followup_lag_min_ms <= 0 || followup_lag_max_ms < followup_lag_min_ms)
    fail("follow-up lag range invalid");
  if (horizon_ms <= 0) fail("horizon_ms must be positive");
  if (n_dates < 2) fail("n_dates must be at least 2");
  if (u_amplitude < 0.0 || u_amplitude >= 1.0) fail("u_amplitude must lie in [0,1)");
  if (date_sigma < 0.0 || noise_sigma < 0.0 || sa_noise_sigma < 0.0)
    fail("noise sigmas must be nonnegative");
  if (!(impulse_rate > 0)) fail("impulse_rate must be positive");
  if (!(impulse_offset > 0)) fail("impulse_offset must be positive");
  if (impulse_amplitude < 0) fail("impulse_amplitude must be nonnegative");
  if (!(vol_scale > 0) || !(base_price > 0)) fail("price walk scale invalid");
  if (base_volume < 0) fail("base_volume must be nonnegative");
  if (!(sa_scale > 0)) fail("sa_scale must be positive");
  if (ticker.empty()) fail("ticker must be nonempty");
}

void gen_news_stream(
    const SynthSpec& spec,
    const std::function<void(const Article&, const LedgerEntry&)>& emit) {
  spec.validate();
  auto plan = make_plan(spec);
  const std::uint64_t total = plan.order.size();

  std::optional<ZipfTable> zipf;
  if (!spec.namespaced_vocab) zipf.emplace(spec.vocab_size, spec.zipf_exponent);

  // serial (= position in the emitted stream) per member, for id assignment
  std::vector<std::vector<std::uint32_t>> serial(plan.clusters.size());
  for (std::size_t c = 0; c < plan.clusters.size(); ++c)
    serial[c].resize(plan.clusters[c].members.size());
  for (std::size_t i = 0; i < plan.order.size(); ++i)
    serial[plan.order[i].cluster][plan.order[i].member] = std::uint32_t(i);

  std::vector<Predictions> preds;
  if (spec.namespaced_vocab) {
    preds.resize(plan.clusters.size());
    for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
      const auto& cl = plan.clusters[c];
      std::vector<std::vector<std::uint32_t>> sets(cl.members.size());
      for (std::size_t m = 0; m < cl.members.size(); ++m)
        sets[m] = member_tokens(spec, nullptr, cl.idx, cl.members[m]);
      preds[c] = predict_cluster(spec, cl, sets, total);
    }
  }

  for (const auto& slot : plan.order) {
    const auto& cl = plan.clusters[slot.cluster];
    const auto& m = cl.members[slot.member];
    auto tokens =
        member_tokens(spec, zipf ? &*zipf : nullptr, cl.idx, m);
    Article a = make_article(article_id(serial[slot.cluster][slot.member]),
                             agency_label(m.agency), m.ts,
                             {keyword_label(cl.keyword)}, m.kind,
                             token_text(spec, cl.idx, tokens));
    LedgerEntry e;
    e.id = a.id;
    e.cluster = cl.idx;
    e.chain_index = m.chain_index;
    if (m.copy_of >= 0) {
      e.copy_of = article_id(serial[slot.cluster][std::uint32_t(m.copy_of)]);
    } else if (slot.member == 0) {
      for (const auto& mm : cl.members)
        if (mm.copy_of == 0)
          e.copies.push_back(article_id(serial[slot.cluster][mm.member_idx]));
    }
    if (spec.namespaced_vocab) {
      e.has_predictions = true;
      e.nov = preds[slot.cluster].nov[slot.member];
      e.top = preds[slot.cluster].top[slot.member];
    }
    emit(a, e);
  }
}

GeneratedNews gen_news(const SynthSpec& spec) {
  GeneratedNews out;
  out.articles.reserve(spec.n_articles);
  out.ledger.reserve(spec.n_articles);
  gen_news_stream(spec, [&](const Article& a, const LedgerEntry& e) {
    if (a.kind == EventKind::Alert) out.alert_ts.push_back(a.ts_ms);
    out.articles.push_back(a);
    out.ledger.push_back(e);
  });
  return out;
}

SynthFiles gen_news_files(const SynthSpec& spec,
                          const std::filesystem::path& news_path,
                          const std::filesystem::path& ledger_path) {
  std::ofstream news(news_path, std::ios::binary);
  if (!news) throw InputError("cannot open for writing: " + news_path.string());
  std::ofstream ledger(ledger_path, std::ios::binary);
  if (!ledger) throw InputError("cannot open for writing: " + ledger_path.string());

  SynthFiles out;
  gen_news_stream(spec, [&](const Article& a, const LedgerEntry& e) {
    if (a.kind == EventKind::Alert) out.alert_ts.push_back(a.ts_ms);
    ++out.articles;
    news << to_jsonl_line(a) << '\n';
    nlohmann::json j;
    j["id"] = e.id;
    j["cluster"] = e.cluster;
    j["chain_index"] = e.chain_index;
    j["copies"] = e.copies;
    if (!e.copy_of.empty()) j["copy_of"] = e.copy_of;
    if (e.has_predictions) {
      j["nov"] = e.nov;
      j["top"] = e.top;
    }
    ledger << j.dump() << '\n';
  });
  if (!news || !ledger) throw InputError("write failed during synthesis");
  return out;
}

std::vector<LedgerEntry> load_ledger(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open ledger: " + path.string());
  std::vector<LedgerEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      LedgerEntry e;
      e.id = j.at("id").get<std::string>();
      e.cluster = j.at("cluster").get<std::uint64_t>();
      e.chain_index = j.at("chain_index").get<std::uint32_t>();
      e.copies = j.at("copies").get<std::vector<std::string>>();
      if (j.contains("copy_of")) e.copy_of = j["copy_of"].get<std::string>();
      if (j.contains("nov")) {
        e.has_predictions = true;
        e.nov = j["nov"].get<double>();
        e.top = j.at("top").get<double>();
      }
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": bad ledger line: " + ex.what());
    }
  }
  return out;
}

std::vector<MinuteBar> gen_bars(const SynthSpec& spec,
                                const std::vector<std::int64_t>& event_ts_ms) {
  spec.validate();
  const int start_date = int(days_of_ts(spec.start_ts_ms));

  // in-session event minutes per date, deduplicated like the event study
  std::vector<std::vector<int>> events(spec.n_dates);
  for (auto ts : event_ts_ms) {
    auto d = days_of_ts(ts) - start_date;
    if (d < 0 || d >= std::int64_t(spec.n_dates)) continue;
    int m = minute_of_ts(ts);
    if (m < kSessionOpenMinute || m >= kSessionEndMinute) continue;
    events[std::size_t(d)].push_back(m - kSessionOpenMinute);
  }
  for (auto& v : events) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  const double A = spec.impulse_amplitude;
  const double decay = std::exp(-spec.impulse_rate);
  const double c0 = spec.impulse_offset;
  constexpr double kPi = 3.14159265358979323846;
  // minutes around each event whose planted values stay untouched; wide
  // enough to cover the default event-study window and the fitted lag range
  constexpr int kProtectPre = 35;
  constexpr int kProtectPost = 155;

  std::vector<MinuteBar> bars;
  bars.reserve(std::size_t(spec.n_dates) * kSessionMinutes);
  std::vector<double> imp(kSessionMinutes);
  std::vector<char> shielded(kSessionMinutes);
  for (std::uint32_t d = 0; d < spec.n_dates; ++d) {
    auto drng = make_rng(substream(spec.seed, kDateStream, d));
    std::normal_distribution<double> gauss(0.0, 1.0);
    double date_factor =
        std::exp(spec.date_sigma * gauss(drng) - spec.date_sigma * spec.date_sigma / 2);

    double extra = 0.0;
    {
      double tail = 0.0;
      std::size_t next = 0;
      for (int s = 0; s < kSessionMinutes; ++s) {
        tail *= decay;
        if (next < events[d].size() && events[d][next] == s) {
          tail += A;
          ++next;
        }
        imp[s] = c0 + tail;
        extra += tail;
      }
    }
    // Date-mean division inside the normalization would otherwise shrink the
    // whole date by its planted event mass. Pay that mass back as a flat
    // debit on minutes far from every event, so the date mean is c0 exactly
    // while the response shape near events stays untouched. Dates too busy
    // to leave room fall back to proportional shrinking.
    std::fill(shielded.begin(), shielded.end(), 0);
    int open_minutes = kSessionMinutes;
    for (int e : events[d]) {
      int lo = std::max(0, e - kProtectPre);
      int hi = std::min(kSessionMinutes, e + kProtectPost + 1);
      for (int s = lo; s < hi; ++s) {
        open_minutes -= !shielded[s];
        shielded[s] = 1;
      }
    }
    double debit = open_minutes > 0 ? extra / open_minutes : 0.0;
    if (open_minutes > 0 && debit < 0.9 * c0) {
      for (int s = 0; s < kSessionMinutes; ++s)
        if (!shielded[s]) imp[s] -= debit;
    } else if (extra > 0.0) {
      double comp = 1.0 + extra / (double(kSessionMinutes) * c0);
      for (int s = 0; s < kSessionMinutes; ++s) imp[s] /= comp;
    }

    auto mrng = make_rng(substream(spec.seed, kMinuteStream, d));
    double price = spec.base_price * date_factor;
    for (int s = 0; s < kSessionMinutes; ++s) {
      double z = gauss(mrng);
      double eps =
          std::exp(spec.noise_sigma * z - spec.noise_sigma * spec.noise_sigma / 2);
      double u = 1.0 + spec.u_amplitude *
                           std::cos(2.0 * kPi * double(s) / (kSessionMinutes - 1));
      double activity = u * date_factor * imp[s] * eps;

      MinuteBar b;
      b.ticker = spec.ticker;
      b.date_days = start_date + int(d);
      b.minute_of_day = kSessionOpenMinute + s;
      b.price = price;
      b.n_trades = std::max<std::int64_t>(0, std::llround(activity * 300.0));
      b.volume = std::max<std::int64_t>(0, std::llround(activity * double(spec.base_volume)));
      bars.push_back(std::move(b));

      double step = spec.vol_scale * activity;
      price *= std::exp((mrng() & 1) ? step : -step);
    }
  }
  return bars;
}

SimilarityCurve gen_power_law_curve(const SynthSpec& spec, double lo_min,
                                    double hi_min, int per_decade) {
  spec.validate();
  auto bins = BinSpec::log_minutes(lo_min, hi_min, per_decade);
  auto rng = make_rng(substream(spec.seed, kCurveStream, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);

  SimilarityCurve curve;
  curve.bins.resize(bins.bin_count());
  for (std::size_t b = 0; b < bins.bin_count(); ++b) {
    auto& bin = curve.bins[b];
    bin.lo_min = double(bins.edges_ms[b]) / 60000.0;
    bin.hi_min = double(bins.edges_ms[b + 1]) / 60000.0;
    double mid = std::sqrt(bin.lo_min * bin.hi_min);
    double z = gauss(rng);
    double eps = std::exp(spec.sa_noise_sigma * z -
                          spec.sa_noise_sigma * spec.sa_noise_sigma / 2);
    bin.mean_sim = spec.sa_scale * std::pow(mid, spec.sa_exponent) * eps;
    bin.pairs = spec.sa_pairs_per_bin;
  }
  return curve;
}

}  // namespace newspulse

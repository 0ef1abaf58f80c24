// newspulse: batch analytics over multi-agency news streams and minute bars.
// One binary, one subcommand per pipeline stage, files between stages.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newspulse/activity.hpp"
#include "newspulse/bars.hpp"
#include "newspulse/config.hpp"
#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"
#include "newspulse/event_study.hpp"
#include "newspulse/fit.hpp"
#include "newspulse/idf.hpp"
#include "newspulse/jsonl.hpp"
#include "newspulse/scoring.hpp"
#include "newspulse/simcurve.hpp"
#include "newspulse/synth.hpp"
#include "newspulse/version.hpp"

namespace fs = std::filesystem;
using namespace newspulse;

namespace {

constexpr const char* kUsage =
    "usage: newspulse idf|score|simfunc|eventstudy|synth --config <path>\n"
    "                 [--keyword GM.N] [--kind ALERT] [--out <dir>]\n"
    "                 [--workers N] [--seed N]\n";

// exit codes: 0 ok, 2 input validation, 3 empty result, 4 fit failure
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;
constexpr int kExitFit = 4;

struct Cli {
  std::string cmd;
  std::string config_path;
  std::optional<std::string> keyword, kind, out, workers, seed;
};

Cli parse_cli(int argc, char** argv) {
  Cli cli;
  if (argc < 2) throw InputError("missing subcommand");
  cli.cmd = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string flag = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc) throw InputError(flag + " needs a value");
      return argv[++i];
    };
    if (flag == "--config") cli.config_path = value();
    else if (flag == "--keyword") cli.keyword = value();
    else if (flag == "--kind") cli.kind = value();
    else if (flag == "--out") cli.out = value();
    else if (flag == "--workers") cli.workers = value();
    else if (flag == "--seed") cli.seed = value();
    else throw InputError("unknown flag: " + flag);
  }
  if (cli.config_path.empty()) throw InputError("--config is required");
  return cli;
}

std::string provenance(const Config& cfg) {
  return std::string("newspulse ") + kVersion + " config=" + cfg.hash_hex();
}

std::string sanitize(std::string_view name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
            c == '_')
               ? c
               : '_';
  return out;
}

const std::vector<std::string_view> kCommonKeys = {
    "out", "workers", "seed", "keyword", "kind",
};

const std::vector<std::string_view> kScoreKeys = {
    "news",      "idf",          "tau_days",        "top_halfwidth_min",
    "idf_scope", "top_aggregation", "history_sources", "batch_size",
};

void require_known(const Config& cfg, std::initializer_list<const std::vector<std::string_view>*> sets) {
  std::vector<std::string_view> all;
  for (auto* s : sets) all.insert(all.end(), s->begin(), s->end());
  cfg.require_known(all);
}

ScoreParams score_params(const Config& cfg) {
  ScoreParams p;
  p.tau_ms = std::llround(cfg.get_double("tau_days", 7.0) * 86400000.0);
  p.top_halfwidth_ms = std::llround(cfg.get_double("top_halfwidth_min", 30.0) * 60000.0);
  if (p.tau_ms <= 0) throw InputError("config: tau_days must be positive");
  if (p.top_halfwidth_ms < 0)
    throw InputError("config: top_halfwidth_min must be nonnegative");
  p.top_aggregation = parse_top_aggregation(cfg.get_string("top_aggregation", "max"));
  auto sources = cfg.get_string("history_sources", "all");
  if (sources != "all") {
    std::string_view rest = sources;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto part = rest.substr(0, comma);
      if (!part.empty()) p.history_sources.emplace_back(part);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (p.history_sources.empty())
      throw InputError("config: history_sources lists no agency");
  }
  return p;
}

std::optional<EventKind> kind_filter(const Config& cfg) {
  auto text = cfg.get_string("kind", "");
  if (text.empty()) return std::nullopt;
  auto kind = parse_event_kind(text);
  if (!is_scorable(kind))
    throw InputError("config: kind " + text + " is not scorable");
  return kind;
}

int workers_of(const Config& cfg) {
  auto w = cfg.get_int("workers", 0);
  if (w < 0) throw InputError("config: workers must be nonnegative");
  return int(w);
}

// IDF from the configured table path, or a streaming build over the news
// file. Scope "keyword" restricts the corpus to articles carrying the
// configured keyword.
IdfTable acquire_idf(const Config& cfg) {
  if (auto path = cfg.get("idf")) return IdfTable::load_tsv(*path);
  auto scope = cfg.get_string("idf_scope", "global");
  std::string keyword;
  if (scope == "keyword") {
    keyword = cfg.get_string("keyword", "");
    if (keyword.empty())
      throw InputError("config: idf_scope=keyword needs a keyword");
  } else if (scope != "global") {
    throw InputError("config: idf_scope must be global or keyword, got \"" +
                     scope + "\"");
  }
  IdfTable::Builder builder;
  NewsReader reader(cfg.get_string("news"));
  while (auto a = reader.next()) {
    if (!is_scorable(a->kind)) continue;
    if (!keyword.empty() &&
        std::find(a->keywords.begin(), a->keywords.end(), keyword) ==
            a->keywords.end())
      continue;
    builder.add(a->tokens);
  }
  return std::move(builder).finish();
}

void write_config_snapshot(const Config& cfg, const fs::path& out_dir,
                           const std::string& cmd) {
  auto path = out_dir / (cmd + ".config");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write config snapshot: " + path.string());
  out << cfg.serialize();
  if (!out) throw InputError("write failed: " + path.string());
}

int cmd_idf(const Config& cfg, const fs::path& out_dir) {
  auto table = acquire_idf(cfg);
  auto path = out_dir / "idf.tsv";
  table.save_tsv(path);
  std::printf("idf: %zu tokens over %llu documents -> %s\n", table.vocab_size(),
              (unsigned long long)table.total_docs(), path.c_str());
  return 0;
}

struct KeywordStats {
  std::uint64_t n = 0;
  double nov_sum = 0.0, top_sum = 0.0;
};

int cmd_score(const Config& cfg, const fs::path& out_dir) {
  auto table = acquire_idf(cfg);

  StreamOptions opts;
  opts.params = score_params(cfg);
  opts.keyword_filter = cfg.get_string("keyword", "");
  opts.kind_filter = kind_filter(cfg);
  opts.workers = workers_of(cfg);
  opts.batch_size = std::size_t(cfg.get_int("batch_size", 2048));
  if (opts.batch_size == 0) throw InputError("config: batch_size must be positive");

  auto tmp_path = out_dir / "scores.csv.tmp";
  std::map<std::string, KeywordStats> by_keyword;
  StreamStats stats;
  {
    std::ofstream tmp(tmp_path, std::ios::binary);
    if (!tmp) throw InputError("cannot write: " + tmp_path.string());
    NewsReader reader(cfg.get_string("news"));
    stats = score_stream(
        [&] { return reader.next(); }, table, opts, [&](ScoreRecord&& r) {
          auto& ks = by_keyword[r.keyword];
          ++ks.n;
          ks.nov_sum += r.novelty;
          ks.top_sum += r.topicality;
          tmp << r.id << ',' << r.keyword << ',' << r.agency << ','
              << to_string(r.kind) << ',' << r.ts_ms << ','
              << format_double(r.novelty) << ',' << format_double(r.topicality)
              << '\n';
        });
    if (!tmp) throw InputError("write failed: " + tmp_path.string());
  }
  if (stats.scored == 0) {
    fs::remove(tmp_path);
    throw EmptyResultError("no articles scored");
  }

  // labels need the per-keyword means, hence the second pass; shortest
  // round-trip float formatting makes the reread values bit-identical
  auto scores_path = out_dir / "scores.csv";
  {
    std::ifstream tmp(tmp_path, std::ios::binary);
    std::ofstream out(scores_path, std::ios::binary);
    if (!out) throw InputError("cannot write: " + scores_path.string());
    out << "# " << provenance(cfg) << "\n";
    out << "# labels split each keyword stream at its mean; nov_label=high "
           "means many similar predecessors, i.e. low novelty in prose terms\n";
    out << "id,keyword,agency,kind,ts,novelty,topicality,nov_label,top_label\n";
    std::string line;
    while (std::getline(tmp, line)) {
      auto fields = split_csv(line);
      const auto& ks = by_keyword.at(std::string(fields[1]));
      double nov = parse_double(fields[5], "novelty");
      double top = parse_double(fields[6], "topicality");
      double nov_mean = ks.nov_sum / double(ks.n);
      double top_mean = ks.top_sum / double(ks.n);
      out << line << ',' << (nov >= nov_mean ? "high" : "low") << ','
          << (top >= top_mean ? "high" : "low") << '\n';
    }
    if (!out) throw InputError("write failed: " + scores_path.string());
  }
  fs::remove(tmp_path);

  auto means_path = out_dir / "score_means.csv";
  {
    std::ofstream out(means_path, std::ios::binary);
    if (!out) throw InputError("cannot write: " + means_path.string());
    out << "# " << provenance(cfg) << "\n";
    out << "keyword,articles,mean_novelty,mean_topicality\n";
    for (const auto& [kw, ks] : by_keyword)
      out << kw << ',' << ks.n << ',' << format_double(ks.nov_sum / double(ks.n))
          << ',' << format_double(ks.top_sum / double(ks.n)) << '\n';
  }

  std::printf(
      "score: read=%llu scored=%llu skipped_story=%llu skipped_unkeyworded=%llu "
      "skipped_filtered=%llu peak_live=%zu -> %s\n",
      (unsigned long long)stats.read, (unsigned long long)stats.scored,
      (unsigned long long)stats.skipped_story,
      (unsigned long long)stats.skipped_unkeyworded,
      (unsigned long long)stats.skipped_filtered, stats.peak_live,
      scores_path.c_str());
  return 0;
}

const std::vector<std::string_view> kSimfuncKeys = {
    "news",       "idf",       "idf_scope", "sa_lo_min", "sa_hi_min",
    "sa_per_decade", "pair_cap", "sc_reference", "sc_lo_min", "sc_hi_min",
    "sc_width_min",
};

int cmd_simfunc(const Config& cfg, const fs::path& out_dir) {
  auto table = acquire_idf(cfg);
  auto keyword = cfg.get_string("keyword", "");
  auto kind = kind_filter(cfg);

  std::vector<Article> articles;
  {
    NewsReader reader(cfg.get_string("news"));
    while (auto a = reader.next()) {
      if (!is_scorable(a->kind)) continue;
      if (kind && a->kind != *kind) continue;
      if (!keyword.empty() &&
          std::find(a->keywords.begin(), a->keywords.end(), keyword) ==
              a->keywords.end())
        continue;
      articles.push_back(std::move(*a));
    }
  }
  if (articles.empty()) throw EmptyResultError("no articles match the filters");

  AutoSimOptions ao;
  ao.bins = BinSpec::log_minutes(cfg.get_double("sa_lo_min", 1.0),
                                 cfg.get_double("sa_hi_min", 525600.0),
                                 int(cfg.get_int("sa_per_decade", 10)));
  ao.pair_cap = std::uint64_t(cfg.get_int("pair_cap", 100000));
  ao.seed = std::uint64_t(cfg.get_int("seed", 0));
  ao.workers = workers_of(cfg);
  auto auto_curve = auto_similarity(articles, table, ao);
  auto auto_path = out_dir / "sim_auto.csv";
  auto_curve.save_csv(auto_path, provenance(cfg));

  // reference agency for the cross curve; first article's agency when unset
  auto reference = cfg.get_string("sc_reference", articles.front().agency);
  std::vector<Article> ref_stream, other_stream;
  for (auto& a : articles)
    (a.agency == reference ? ref_stream : other_stream).push_back(std::move(a));
  if (ref_stream.empty())
    throw EmptyResultError("reference agency " + reference + " has no articles");
  if (other_stream.empty())
    throw EmptyResultError("no articles outside reference agency " + reference);

  CrossSimOptions co;
  co.bins = BinSpec::linear_minutes(cfg.get_double("sc_lo_min", -120.0),
                                    cfg.get_double("sc_hi_min", 120.0),
                                    cfg.get_double("sc_width_min", 1.0));
  co.workers = ao.workers;
  auto cross_curve = cross_similarity(ref_stream, other_stream, table, co);
  auto cross_path = out_dir / "sim_cross.csv";
  cross_curve.save_csv(cross_path, provenance(cfg));

  std::printf("simfunc: %zu articles, reference=%s -> %s, %s\n", articles.size(),
              reference.c_str(), auto_path.c_str(), cross_path.c_str());
  return 0;
}

const std::vector<std::string_view> kEventStudyKeys = {
    "news",        "idf",          "bars",        "ticker",
    "measure",     "tau_days",     "top_halfwidth_min", "idf_scope",
    "top_aggregation", "history_sources", "batch_size",  "lag_lo_min",
    "lag_hi_min",  "window_lo_min", "window_hi_min", "fit_lag_lo",
    "fit_lag_hi",  "premarket_to_open",
};

struct ScoredEvent {
  std::string keyword;
  EventKind kind;
  std::int64_t ts_ms;
  double nov, top;
};

int cmd_eventstudy(const Config& cfg, const fs::path& out_dir) {
  auto table = acquire_idf(cfg);

  StreamOptions opts;
  opts.params = score_params(cfg);
  opts.keyword_filter = cfg.get_string("keyword", "");
  opts.kind_filter = kind_filter(cfg);
  opts.workers = workers_of(cfg);
  opts.batch_size = std::size_t(cfg.get_int("batch_size", 2048));

  std::vector<ScoredEvent> rows;
  {
    NewsReader reader(cfg.get_string("news"));
    score_stream([&] { return reader.next(); }, table, opts, [&](ScoreRecord&& r) {
      rows.push_back({std::move(r.keyword), r.kind, r.ts_ms, r.novelty, r.topicality});
    });
  }
  if (rows.empty()) throw EmptyResultError("no usable events: nothing scored");

  auto bars = ingest_bars(cfg.get_string("bars"));
  auto ticker = cfg.get_string("ticker", bars.empty() ? "" : bars.front().ticker);
  auto measure = parse_measure(cfg.get_string("measure", "volatility"));
  auto series = normalize(raw_activity(bars, ticker, measure));

  EventStudyOptions eopts;
  eopts.lag_lo = int(cfg.get_int("lag_lo_min", -30));
  eopts.lag_hi = int(cfg.get_int("lag_hi_min", 90));
  eopts.premarket_to_open = cfg.get_bool("premarket_to_open", false);
  int win_lo = int(cfg.get_int("window_lo_min", 0));
  int win_hi = int(cfg.get_int("window_hi_min", 3));
  ExpFitOptions fopts;
  fopts.lag_lo = int(cfg.get_int("fit_lag_lo", 0));
  fopts.lag_hi = int(cfg.get_int("fit_lag_hi", 60));

  // per-keyword means over all kinds, then (keyword, kind, label) groups
  std::map<std::string, KeywordStats> by_keyword;
  for (const auto& r : rows) {
    auto& ks = by_keyword[r.keyword];
    ++ks.n;
    ks.nov_sum += r.nov;
    ks.top_sum += r.top;
  }

  auto means_path = out_dir / "window_means.csv";
  std::ofstream means(means_path, std::ios::binary);
  if (!means) throw InputError("cannot write: " + means_path.string());
  means << "# " << provenance(cfg) << "\n";
  means << "keyword,kind,label,articles,events,window_lo_min,window_hi_min,"
           "window_mean,fit_status\n";

  static const char* kLabels[] = {"all", "nov_high", "nov_low", "top_high",
                                  "top_low"};
  static const EventKind kKinds[] = {EventKind::Alert, EventKind::Headline,
                                     EventKind::Title};
  std::size_t curves_written = 0;
  bool fit_failed = false;

  for (const auto& [kw, ks] : by_keyword) {
    double nov_mean = ks.nov_sum / double(ks.n);
    double top_mean = ks.top_sum / double(ks.n);
    for (auto kind : kKinds) {
      if (opts.kind_filter && kind != *opts.kind_filter) continue;
      for (const char* label : kLabels) {
        std::vector<std::int64_t> events;
        for (const auto& r : rows) {
          if (r.keyword != kw || r.kind != kind) continue;
          std::string_view l = label;
          if (l == "nov_high" && !(r.nov >= nov_mean)) continue;
          if (l == "nov_low" && r.nov >= nov_mean) continue;
          if (l == "top_high" && !(r.top >= top_mean)) continue;
          if (l == "top_low" && r.top >= top_mean) continue;
          events.push_back(r.ts_ms);
        }
        auto stem = sanitize(kw) + "_" + to_string(kind) + "_" + label;
        if (events.empty()) {
          means << kw << ',' << to_string(kind) << ',' << label
                << ",0,0,,,,skipped\n";
          continue;
        }
        ResponseCurve curve;
        try {
          curve = event_study(series, events, eopts);
        } catch (const EmptyResultError&) {
          means << kw << ',' << to_string(kind) << ',' << label << ','
                << events.size() << ",0,,,,skipped\n";
          continue;
        }
        curve.save_csv(out_dir / ("response_" + stem + ".csv"), provenance(cfg));
        ++curves_written;
        std::uint32_t usable = 0;
        for (auto e : curve.events) usable = std::max(usable, e);

        std::string wm_text = "";
        try {
          wm_text = format_double(window_mean(curve, win_lo, win_hi));
        } catch (const EmptyResultError&) {
          // all-gap window; leave the cell empty
        }

        std::string fit_status = "ok";
        ExpFit fit;
        std::string fit_error;
        try {
          fit = fit_exponential(curve, fopts);
        } catch (const FitError& e) {
          fit_status = "failed";
          fit_error = e.what();
          fit = e.best;
          fit_failed = true;
        } catch (const InputError& e) {
          fit_status = "skipped";
          fit_error = e.what();
        }

        means << kw << ',' << to_string(kind) << ',' << label << ','
              << events.size() << ',' << usable << ',' << win_lo << ','
              << win_hi << ',' << wm_text << ',' << fit_status << '\n';

        std::ofstream report(out_dir / ("fit_" + stem + ".txt"), std::ios::binary);
        report << "version=" << kVersion << "\n";
        report << "config=" << cfg.hash_hex() << "\n";
        report << "keyword=" << kw << "\nkind=" << to_string(kind)
               << "\nlabel=" << label << "\n";
        report << "articles=" << events.size() << "\nevents=" << usable << "\n";
        report << "window_mean=" << wm_text << "\n";
        report << "status=" << fit_status << "\n";
        if (!fit_error.empty()) report << "error=" << fit_error << "\n";
        if (fit_status != "skipped") {
          report << "amplitude=" << format_double(fit.amplitude) << "\n";
          report << "rate=" << format_double(fit.rate) << "\n";
          report << "offset=" << format_double(fit.offset) << "\n";
          report << "residual=" << format_double(fit.residual) << "\n";
          report << "lags_used=" << fit.lags_used << "\n";
        }

        if (fit_status == "ok") {
          std::ofstream resid(out_dir / ("fit_residuals_" + stem + ".csv"),
                              std::ios::binary);
          resid << "# " << provenance(cfg) << "\n";
          resid << "lag_min,observed,fitted,residual\n";
          for (std::size_t i = 0; i < curve.size(); ++i) {
            int lag = curve.lag_at(i);
            if (lag < fopts.lag_lo || lag > fopts.lag_hi) continue;
            if (curve.events[i] == 0) continue;
            double fitted =
                fit.amplitude * std::exp(-fit.rate * double(lag)) + fit.offset;
            resid << lag << ',' << format_double(curve.mean[i]) << ','
                  << format_double(fitted) << ','
                  << format_double(curve.mean[i] - fitted) << '\n';
          }
        }
        std::printf("eventstudy %s %s %s: articles=%zu events=%u %s\n",
                    kw.c_str(), to_string(kind), label, events.size(), usable,
                    fit_status.c_str());
      }
    }
  }
  if (!means) throw InputError("write failed: " + means_path.string());
  if (curves_written == 0)
    throw EmptyResultError("no usable events in any group");
  return fit_failed ? kExitFit : 0;
}

const std::vector<std::string_view> kSynthKeys = {
    "n_articles",   "n_agencies",    "n_keywords",        "namespaced_vocab",
    "vocab_size",   "zipf_exponent", "tokens_per_article", "cluster_overlap",
    "chain_continue_p", "chain_max", "copy_p",            "copy_lag_max_ms",
    "followup_lag_min_ms", "followup_lag_max_ms", "start_ts_ms", "horizon_ms",
    "ticker",       "n_dates",       "u_amplitude",       "date_sigma",
    "noise_sigma",  "impulse_amplitude", "impulse_rate",  "impulse_offset",
    "vol_scale",    "base_price",    "base_volume",       "sa_exponent",
    "sa_scale",     "sa_noise_sigma", "sa_pairs_per_bin",
};

int cmd_synth(const Config& cfg, const fs::path& out_dir) {
  SynthSpec spec;
  spec.seed = std::uint64_t(cfg.get_int("seed", 1));
  spec.n_articles = std::uint32_t(cfg.get_int("n_articles", spec.n_articles));
  spec.n_agencies = std::uint32_t(cfg.get_int("n_agencies", spec.n_agencies));
  spec.n_keywords = std::uint32_t(cfg.get_int("n_keywords", spec.n_keywords));
  spec.namespaced_vocab = cfg.get_bool("namespaced_vocab", spec.namespaced_vocab);
  spec.vocab_size = std::uint32_t(cfg.get_int("vocab_size", spec.vocab_size));
  spec.zipf_exponent = cfg.get_double("zipf_exponent", spec.zipf_exponent);
  spec.tokens_per_article =
      std::uint32_t(cfg.get_int("tokens_per_article", spec.tokens_per_article));
  spec.cluster_overlap = cfg.get_double("cluster_overlap", spec.cluster_overlap);
  spec.chain_continue_p = cfg.get_double("chain_continue_p", spec.chain_continue_p);
  spec.chain_max = std::uint32_t(cfg.get_int("chain_max", spec.chain_max));
  spec.copy_p = cfg.get_double("copy_p", spec.copy_p);
  spec.copy_lag_max_ms = cfg.get_int("copy_lag_max_ms", spec.copy_lag_max_ms);
  spec.followup_lag_min_ms =
      cfg.get_int("followup_lag_min_ms", spec.followup_lag_min_ms);
  spec.followup_lag_max_ms =
      cfg.get_int("followup_lag_max_ms", spec.followup_lag_max_ms);
  spec.start_ts_ms = cfg.get_int("start_ts_ms", spec.start_ts_ms);
  spec.horizon_ms = cfg.get_int("horizon_ms", spec.horizon_ms);
  spec.ticker = cfg.get_string("ticker", spec.ticker);
  spec.n_dates = std::uint32_t(cfg.get_int("n_dates", spec.n_dates));
  spec.u_amplitude = cfg.get_double("u_amplitude", spec.u_amplitude);
  spec.date_sigma = cfg.get_double("date_sigma", spec.date_sigma);
  spec.noise_sigma = cfg.get_double("noise_sigma", spec.noise_sigma);
  spec.impulse_amplitude =
      cfg.get_double("impulse_amplitude", spec.impulse_amplitude);
  spec.impulse_rate = cfg.get_double("impulse_rate", spec.impulse_rate);
  spec.impulse_offset = cfg.get_double("impulse_offset", spec.impulse_offset);
  spec.vol_scale = cfg.get_double("vol_scale", spec.vol_scale);
  spec.base_price = cfg.get_double("base_price", spec.base_price);
  spec.base_volume = cfg.get_int("base_volume", spec.base_volume);
  spec.sa_exponent = cfg.get_double("sa_exponent", spec.sa_exponent);
  spec.sa_scale = cfg.get_double("sa_scale", spec.sa_scale);
  spec.sa_noise_sigma = cfg.get_double("sa_noise_sigma", spec.sa_noise_sigma);
  spec.sa_pairs_per_bin =
      std::uint64_t(cfg.get_int("sa_pairs_per_bin", spec.sa_pairs_per_bin));
  spec.validate();

  auto news_path = out_dir / "news.jsonl";
  auto ledger_path = out_dir / "ledger.jsonl";
  auto files = gen_news_files(spec, news_path, ledger_path);

  // alerts drive the planted market impulse
  auto bars = gen_bars(spec, files.alert_ts);
  auto bars_path = out_dir / "bars.csv";
  save_bars_csv(bars_path, bars, provenance(cfg));

  std::printf("synth: %llu articles (%zu alerts), %zu bars -> %s, %s, %s\n",
              (unsigned long long)files.articles, files.alert_ts.size(),
              bars.size(), news_path.c_str(), ledger_path.c_str(),
              bars_path.c_str());
  return 0;
}

int run(int argc, char** argv) {
  auto cli = parse_cli(argc, argv);
  auto cfg = Config::load(cli.config_path);
  if (cli.keyword) cfg.set("keyword", *cli.keyword);
  if (cli.kind) cfg.set("kind", *cli.kind);
  if (cli.out) cfg.set("out", *cli.out);
  if (cli.workers) cfg.set("workers", *cli.workers);
  if (cli.seed) cfg.set("seed", *cli.seed);

  if (cli.cmd == "idf" || cli.cmd == "score")
    require_known(cfg, {&kCommonKeys, &kScoreKeys});
  else if (cli.cmd == "simfunc")
    require_known(cfg, {&kCommonKeys, &kSimfuncKeys});
  else if (cli.cmd == "eventstudy")
    require_known(cfg, {&kCommonKeys, &kEventStudyKeys});
  else if (cli.cmd == "synth")
    require_known(cfg, {&kCommonKeys, &kSynthKeys});
  else
    throw InputError("unknown subcommand: " + cli.cmd);

  fs::path out_dir = cfg.get_string("out", ".");
  fs::create_directories(out_dir);
  write_config_snapshot(cfg, out_dir, cli.cmd);

  if (cli.cmd == "idf") return cmd_idf(cfg, out_dir);
  if (cli.cmd == "score") return cmd_score(cfg, out_dir);
  if (cli.cmd == "simfunc") return cmd_simfunc(cfg, out_dir);
  if (cli.cmd == "eventstudy") return cmd_eventstudy(cfg, out_dir);
  return cmd_synth(cfg, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const EmptyResultError& e) {
    std::fprintf(stderr, "newspulse: %s\n", e.what());
    return kExitEmpty;
  } catch (const FitError& e) {
    std::fprintf(stderr, "newspulse: fit failed: %s\n", e.what());
    return kExitFit;
  } catch (const InputError& e) {
    std::fprintf(stderr, "newspulse: %s\n%s", e.what(), kUsage);
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "newspulse: %s\n", e.what());
    return 1;
  }
}

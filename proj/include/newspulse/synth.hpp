#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "newspulse/article.hpp"
#include "newspulse/bars.hpp"
#include "newspulse/simcurve.hpp"

namespace newspulse {

// Everything the generators need; identical spec -> bit-identical output.
// News comes out as topic clusters: a head article, optional verbatim copies
// at other agencies shortly after, and a follow-up chain reusing a fraction
// of the head's tokens. With namespaced_vocab each cluster draws from its own
// token namespace, making cross-cluster similarity exactly zero; that is what
// lets the generator predict every article's novelty and topicality by
// in-cluster enumeration (predictions assume the default scoring parameters:
// one-week window, +/-30 min, max-per-agency aggregation, global idf over the
// whole stream, no source filter).
struct SynthSpec {
  std::uint64_t seed = 1;

  // news stream
  std::uint32_t n_articles = 10000;
  std::uint32_t n_agencies = 6;
  std::uint32_t n_keywords = 8;
  bool namespaced_vocab = true;
  std::uint32_t vocab_size = 30000;  // shared-vocabulary mode only
  double zipf_exponent = 1.05;       // shared-vocabulary rank weights
  std::uint32_t tokens_per_article = 12;
  double cluster_overlap = 0.6;    // fraction of head tokens a follow-up reuses
  double chain_continue_p = 0.55;  // geometric follow-up chain
  std::uint32_t chain_max = 8;
  double copy_p = 0.3;  // a head is copied to all other agencies, or none
  std::int64_t copy_lag_max_ms = 5 * 60'000;
  std::int64_t followup_lag_min_ms = 60'000;
  std::int64_t followup_lag_max_ms = 12LL * 3600'000;
  std::int64_t start_ts_ms = 1'136'073'600'000;  // 2006-01-01 UTC
  std::int64_t horizon_ms = 120LL * 86'400'000;  // head timestamps span this

  // market bars
  std::string ticker = "ACME";
  std::uint32_t n_dates = 120;  // consecutive calendar dates from start_ts
  double u_amplitude = 0.35;    // intraday U-shape depth
  double date_sigma = 0.2;      // lognormal per-date level
  double noise_sigma = 0.05;    // lognormal per-minute noise, mean 1
  double impulse_amplitude = 0.45;
  double impulse_rate = 0.073;
  double impulse_offset = 1.0;
  double vol_scale = 0.002;  // per-minute log-return magnitude at activity 1
  double base_price = 100.0;
  std::int64_t base_volume = 10000;

  // planted similarity decay
  double sa_exponent = -0.35;
  double sa_scale = 1.0;
  double sa_noise_sigma = 0.0;
  std::uint64_t sa_pairs_per_bin = 10000;

  void validate() const;  // throws InputError on infeasible settings
};

struct LedgerEntry {
  std::string id;
  std::uint64_t cluster = 0;
  std::uint32_t chain_index = 0;      // 0 for heads and their copies
  std::vector<std::string> copies;    // ids of verbatim copies (heads only)
  std::string copy_of;                // source id when this is a copy
  bool has_predictions = false;
  double nov = 0.0;                   // predicted novelty (namespaced mode)
  double top = 0.0;                   // predicted topicality (namespaced mode)
};

struct GeneratedNews {
  std::vector<Article> articles;  // timestamp-sorted
  std::vector<LedgerEntry> ledger;
  std::vector<std::int64_t> alert_ts;
};

GeneratedNews gen_news(const SynthSpec& spec);

// Streaming variant for corpora too large to hold: emits articles in
// timestamp order.
void gen_news_stream(
    const SynthSpec& spec,
    const std::function<void(const Article&, const LedgerEntry&)>& emit);

struct SynthFiles {
  std::uint64_t articles = 0;
  std::vector<std::int64_t> alert_ts;
};

SynthFiles gen_news_files(const SynthSpec& spec,
                          const std::filesystem::path& news_path,
                          const std::filesystem::path& ledger_path);

std::vector<LedgerEntry> load_ledger(const std::filesystem::path& path);

// Bars whose volatility carries base U-curve x date level x planted impulse
// (offset + sum of A*exp(-rate*lag) over same-session events at lag >= 0),
// with mean-one lognormal noise. Each date's planted event mass is paid back
// as a flat debit on minutes at least 35 before and 155 after every event,
// keeping the date mean at the offset exactly so date-mean division cannot
// shrink the response shape; dates with no room for the debit shrink
// proportionally instead. Prices log-walk by +/- vol_scale*activity, making
// the absolute log-return reproduce planted activity exactly; trade counts
// and volume are rounded to integers and carry it only approximately.
// Off-session event timestamps are ignored; same-minute events collapse to
// one.
std::vector<MinuteBar> gen_bars(const SynthSpec& spec,
                                const std::vector<std::int64_t>& event_ts_ms);

// Similarity curve sampled from scale * midpoint^exponent over log-spaced
// bins, with optional mean-one lognormal noise per bin. Midpoint is the
// geometric bin center, the same abscissa the power-law fit uses, so the
// noise-free curve is exactly log-linear.
SimilarityCurve gen_power_law_curve(const SynthSpec& spec, double lo_min,
                                    double hi_min, int per_decade);

}  // namespace newspulse

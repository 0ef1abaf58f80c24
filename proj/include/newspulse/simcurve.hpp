#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "newspulse/article.hpp"
#include "newspulse/idf.hpp"

namespace newspulse {

// Lag bins with integer-millisecond edges so bin membership is an exact
// integer comparison. Bin k covers [edges_ms[k], edges_ms[k+1]).
struct BinSpec {
  std::vector<std::int64_t> edges_ms;

  static BinSpec log_minutes(double lo_min, double hi_min, int per_decade);
  static BinSpec linear_minutes(double lo_min, double hi_min, double width_min);

  std::size_t bin_count() const { return edges_ms.empty() ? 0 : edges_ms.size() - 1; }
  int find(std::int64_t lag_ms) const;  // -1 when outside all bins
};

struct LagBin {
  double lo_min = 0.0;
  double hi_min = 0.0;
  double mean_sim = 0.0;  // NaN when pairs == 0
  std::uint64_t pairs = 0;
};

struct SimilarityCurve {
  std::vector<LagBin> bins;

  // header: lag_lo_min,lag_hi_min,mean_sim,pairs; provenance lines (if any)
  // are written first as # comments
  void save_csv(const std::filesystem::path& path,
                std::string_view provenance = {}) const;
};

struct AutoSimOptions {
  BinSpec bins = BinSpec::log_minutes(1.0, 525600.0, 10);  // 1 min .. 1 year
  std::uint64_t pair_cap = 100000;  // per-bin; 0 disables sampling
  std::uint64_t seed = 0;
  int workers = 0;
};

// Mean pairwise cosine by forward lag over one timestamp-sorted stream
// (typically all articles carrying one keyword). Bins whose pair population
// exceeds the cap are estimated from a seeded uniform sample (binomial
// thinning per article, so results do not depend on worker count); bins
// at or under the cap are exact.
SimilarityCurve auto_similarity(const std::vector<Article>& articles,
                                const IdfTable& table,
                                const AutoSimOptions& opts = {});

struct CrossSimOptions {
  BinSpec bins = BinSpec::linear_minutes(-120.0, 120.0, 1.0);
  int workers = 0;
};

// Mean cosine between a reference stream and other agencies' articles at
// signed lag (positive = other side later). All pairs, no sampling.
SimilarityCurve cross_similarity(const std::vector<Article>& reference,
                                 const std::vector<Article>& others,
                                 const IdfTable& table,
                                 const CrossSimOptions& opts = {});

}  // namespace newspulse

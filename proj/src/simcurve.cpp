#include "newspulse/simcurve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <unordered_set>

#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"
#include "newspulse/parallel.hpp"
#include "newspulse/rng.hpp"
#include "newspulse/similarity.hpp"

namespace newspulse {

namespace {
constexpr std::int64_t kMsPerMin = 60'000;

void check_edges(std::vector<std::int64_t>& edges) {
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) throw InputError("bin spec needs at least one bin");
}
}  // namespace

BinSpec BinSpec::log_minutes(double lo_min, double hi_min, int per_decade) {
  if (!(lo_min > 0) || !(hi_min > lo_min) || per_decade < 1)
    throw InputError("bad log bin spec");
  BinSpec spec;
  for (int k = 0;; ++k) {
    double edge_min = lo_min * std::pow(10.0, double(k) / per_decade);
    spec.edges_ms.push_back(std::llround(edge_min * kMsPerMin));
    if (edge_min >= hi_min) break;
    if (k > 100000) throw InputError("log bin spec overflow");
  }
  check_edges(spec.edges_ms);
  return spec;
}

BinSpec BinSpec::linear_minutes(double lo_min, double hi_min, double width_min) {
  if (!(width_min > 0) || !(hi_min > lo_min))
    throw InputError("bad linear bin spec");
  BinSpec spec;
  for (int k = 0;; ++k) {
    double edge_min = lo_min + double(k) * width_min;
    spec.edges_ms.push_back(std::llround(edge_min * kMsPerMin));
    if (edge_min >= hi_min) break;
    if (k > 1000000) throw InputError("linear bin spec overflow");
  }
  check_edges(spec.edges_ms);
  return spec;
}

int BinSpec::find(std::int64_t lag_ms) const {
  if (edges_ms.empty() || lag_ms < edges_ms.front() || lag_ms >= edges_ms.back())
    return -1;
  auto it = std::upper_bound(edges_ms.begin(), edges_ms.end(), lag_ms);
  return static_cast<int>(it - edges_ms.begin()) - 1;
}

void SimilarityCurve::save_csv(const std::filesystem::path& path,
                               std::string_view provenance) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path.string());
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "lag_lo_min,lag_hi_min,mean_sim,pairs\n";
  for (const auto& b : bins) {
    out << format_double(b.lo_min) << ',' << format_double(b.hi_min) << ','
        << format_double(b.mean_sim) << ',' << b.pairs << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

namespace {

struct BinAccum {
  std::vector<double> sum;
  std::vector<std::uint64_t> count;
  explicit BinAccum(std::size_t bins) : sum(bins, 0.0), count(bins, 0) {}
};

void require_sorted(const std::vector<Article>& articles, const char* what) {
  for (std::size_t i = 1; i < articles.size(); ++i)
    if (articles[i].ts_ms < articles[i - 1].ts_ms)
      throw InputError(std::string(what) + " stream not timestamp-sorted at " +
                       articles[i].id);
}

SimilarityCurve finish_curve(const BinSpec& bins,
                             const std::vector<BinAccum>& blocks) {
  SimilarityCurve curve;
  curve.bins.resize(bins.bin_count());
  for (std::size_t b = 0; b < bins.bin_count(); ++b) {
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& blk : blocks) {  // fixed block order, worker-independent
      sum += blk.sum[b];
      n += blk.count[b];
    }
    auto& out = curve.bins[b];
    out.lo_min = double(bins.edges_ms[b]) / kMsPerMin;
    out.hi_min = double(bins.edges_ms[b + 1]) / kMsPerMin;
    out.pairs = n;
    out.mean_sim = n ? sum / double(n) : std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

// distinct values in [0, n), ascending
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                      std::uint64_t k,
                                                      std::mt19937_64& rng) {
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(k * 2);
  for (std::uint64_t t = n - k; t < n; ++t) {
    std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, t)(rng);
    if (!picked.insert(r).second) picked.insert(t);
  }
  std::vector<std::uint64_t> out(picked.begin(), picked.end());
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::size_t kBlock = 256;  // articles per accumulation block

}  // namespace

SimilarityCurve auto_similarity(const std::vector<Article>& articles,
                                const IdfTable& table,
                                const AutoSimOptions& opts) {
  if (articles.size() < 2)
    throw EmptyResultError("similarity over lag needs at least 2 articles");
  require_sorted(articles, "similarity");
  const auto& bins = opts.bins;
  const std::size_t nbins = bins.bin_count();
  const std::size_t n = articles.size();

  std::vector<WeightedVector> vecs(n);
  std::vector<std::int64_t> ts(n);
  parallel_for(n, opts.workers, [&](std::size_t i, int) {
    vecs[i] = vectorize(articles[i], table);
    ts[i] = articles[i].ts_ms;
  });

  // partner range for (article i, bin b); partners are strictly later since
  // every bin edge is positive
  auto partner_range = [&](std::size_t i, std::size_t b, std::size_t& lo,
                           std::size_t& hi) {
    auto first = std::lower_bound(ts.begin(), ts.end(), ts[i] + bins.edges_ms[b]);
    auto last = std::lower_bound(first, ts.end(), ts[i] + bins.edges_ms[b + 1]);
    lo = first - ts.begin();
    hi = last - ts.begin();
  };

  std::size_t nblocks = (n + kBlock - 1) / kBlock;

  // pass 1: exact pair population per bin
  std::vector<std::vector<std::uint64_t>> block_counts(
      nblocks, std::vector<std::uint64_t>(nbins, 0));
  parallel_for(nblocks, opts.workers, [&](std::size_t blk, int) {
    auto& counts = block_counts[blk];
    for (std::size_t i = blk * kBlock; i < std::min(n, (blk + 1) * kBlock); ++i)
      for (std::size_t b = 0; b < nbins; ++b) {
        std::size_t lo, hi;
        partner_range(i, b, lo, hi);
        counts[b] += hi - lo;
      }
  });
  std::vector<std::uint64_t> population(nbins, 0);
  for (const auto& counts : block_counts)
    for (std::size_t b = 0; b < nbins; ++b) population[b] += counts[b];

  // keep probability per bin; bins at or under the cap stay exact
  std::vector<double> keep(nbins, 1.0);
  if (opts.pair_cap > 0)
    for (std::size_t b = 0; b < nbins; ++b)
      if (population[b] > opts.pair_cap)
        keep[b] = double(opts.pair_cap) / double(population[b]);

  // pass 2: accumulate cosines, thinning oversubscribed bins per article
  std::vector<BinAccum> blocks(nblocks, BinAccum(nbins));
  parallel_for(nblocks, opts.workers, [&](std::size_t blk, int) {
    auto& acc = blocks[blk];
    for (std::size_t i = blk * kBlock; i < std::min(n, (blk + 1) * kBlock); ++i) {
      for (std::size_t b = 0; b < nbins; ++b) {
        std::size_t lo, hi;
        partner_range(i, b, lo, hi);
        std::uint64_t cnt = hi - lo;
        if (cnt == 0) continue;
        if (keep[b] >= 1.0) {
          for (std::size_t j = lo; j < hi; ++j) {
            acc.sum[b] += cosine(vecs[i], vecs[j]);
            ++acc.count[b];
          }
        } else {
          auto rng = make_rng(substream(opts.seed, i, b));
          std::uint64_t k =
              std::binomial_distribution<std::uint64_t>(cnt, keep[b])(rng);
          if (k == 0) continue;
          for (auto off : sample_without_replacement(cnt, k, rng)) {
            acc.sum[b] += cosine(vecs[i], vecs[lo + off]);
            ++acc.count[b];
          }
        }
      }
    }
  });
  return finish_curve(bins, blocks);
}

SimilarityCurve cross_similarity(const std::vector<Article>& reference,
                                 const std::vector<Article>& others,
                                 const IdfTable& table,
                                 const CrossSimOptions& opts) {
  if (reference.empty() || others.empty())
    throw EmptyResultError("cross similarity needs both streams nonempty");
  require_sorted(reference, "reference");
  require_sorted(others, "other-agency");
  const auto& bins = opts.bins;
  const std::size_t nbins = bins.bin_count();

  std::vector<WeightedVector> ref_vecs(reference.size());
  parallel_for(reference.size(), opts.workers, [&](std::size_t i, int) {
    ref_vecs[i] = vectorize(reference[i], table);
  });
  std::vector<WeightedVector> other_vecs(others.size());
  std::vector<std::int64_t> other_ts(others.size());
  parallel_for(others.size(), opts.workers, [&](std::size_t i, int) {
    other_vecs[i] = vectorize(others[i], table);
    other_ts[i] = others[i].ts_ms;
  });

  std::size_t nblocks = (reference.size() + kBlock - 1) / kBlock;
  std::vector<BinAccum> blocks(nblocks, BinAccum(nbins));
  parallel_for(nblocks, opts.workers, [&](std::size_t blk, int) {
    auto& acc = blocks[blk];
    for (std::size_t i = blk * kBlock;
         i < std::min(reference.size(), (blk + 1) * kBlock); ++i) {
      std::int64_t t = reference[i].ts_ms;
      auto first = std::lower_bound(other_ts.begin(), other_ts.end(),
                                    t + bins.edges_ms.front());
      auto last = std::lower_bound(first, other_ts.end(),
                                   t + bins.edges_ms.back());
      for (auto it = first; it != last; ++it) {
        std::size_t j = it - other_ts.begin();
        int b = bins.find(other_ts[j] - t);
        if (b < 0) continue;
        acc.sum[b] += cosine(ref_vecs[i], other_vecs[j]);
        ++acc.count[b];
      }
    }
  });
  return finish_curve(bins, blocks);
}

}  // namespace newspulse

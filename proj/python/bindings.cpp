#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "newspulse/activity.hpp"
#include "newspulse/article.hpp"
#include "newspulse/bars.hpp"
#include "newspulse/errors.hpp"
#include "newspulse/event_study.hpp"
#include "newspulse/fit.hpp"
#include "newspulse/idf.hpp"
#include "newspulse/jsonl.hpp"
#include "newspulse/scoring.hpp"
#include "newspulse/simcurve.hpp"
#include "newspulse/similarity.hpp"
#include "newspulse/synth.hpp"
#include "newspulse/version.hpp"

namespace py = pybind11;
using namespace newspulse;

namespace {

// Batch scorer over an in-memory stream. Articles must already be in
// timestamp order, same contract as the streaming path.
std::vector<ScoreRecord> score_articles(const std::vector<Article>& articles,
                                        const IdfTable& table,
                                        const StreamOptions& opts) {
  std::vector<ScoreRecord> out;
  std::size_t i = 0;
  score_stream(
      [&]() -> std::optional<Article> {
        if (i >= articles.size()) return std::nullopt;
        return articles[i++];
      },
      table, opts, [&](ScoreRecord&& r) { out.push_back(std::move(r)); });
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "News novelty/topicality indicators and intraday market response";
  m.attr("__version__") = kVersion;
  m.attr("SESSION_OPEN_MINUTE") = kSessionOpenMinute;
  m.attr("SESSION_MINUTES") = kSessionMinutes;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<EmptyResultError>(m, "EmptyResultError", PyExc_RuntimeError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

  py::enum_<EventKind>(m, "EventKind")
      .value("ALERT", EventKind::Alert)
      .value("HEADLINE", EventKind::Headline)
      .value("STORY", EventKind::Story)
      .value("TITLE", EventKind::Title);
  m.def("parse_event_kind", &parse_event_kind, py::arg("text"));
  m.def("is_scorable", &is_scorable, py::arg("kind"));

  py::class_<Article>(m, "Article")
      .def(py::init(&make_article), py::arg("id"), py::arg("agency"),
           py::arg("ts_ms"), py::arg("keywords"), py::arg("kind"),
           py::arg("text"))
      .def_readonly("id", &Article::id)
      .def_readonly("agency", &Article::agency)
      .def_readonly("ts_ms", &Article::ts_ms)
      .def_readonly("keywords", &Article::keywords)
      .def_readonly("kind", &Article::kind)
      .def_readonly("text", &Article::text)
      .def_readonly("tokens", &Article::tokens)
      .def("__repr__", [](const Article& a) {
        return "<Article " + a.id + " " + a.agency + " " + to_string(a.kind) +
               " ts=" + std::to_string(a.ts_ms) + ">";
      });
  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("ingest_news", &ingest_news, py::arg("path"),
        py::call_guard<py::gil_scoped_release>());
  m.def("to_jsonl_line", &to_jsonl_line, py::arg("article"));

  py::enum_<IdfScope>(m, "IdfScope")
      .value("GLOBAL", IdfScope::Global)
      .value("KEYWORD", IdfScope::Keyword);

  py::class_<IdfTable>(m, "IdfTable")
      .def_property_readonly("total_docs", &IdfTable::total_docs)
      .def_property_readonly("vocab_size", &IdfTable::vocab_size)
      .def("idf", &IdfTable::idf, py::arg("token"))
      .def("doc_freq", &IdfTable::doc_freq, py::arg("token"))
      .def("save_tsv", &IdfTable::save_tsv, py::arg("path"))
      .def_static("load_tsv", &IdfTable::load_tsv, py::arg("path"));
  m.def("build_idf", &build_idf, py::arg("articles"),
        py::arg("scope") = IdfScope::Global, py::arg("keyword") = std::string{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<WeightedVector>(m, "WeightedVector")
      .def_readonly("ids", &WeightedVector::ids)
      .def_readonly("weights", &WeightedVector::weights)
      .def_readonly("norm", &WeightedVector::norm)
      .def("__len__", &WeightedVector::size);
  m.def("vectorize", &vectorize, py::arg("article"), py::arg("table"));
  m.def("vectorize_tokens", &vectorize_tokens, py::arg("tokens"), py::arg("table"));
  m.def("cosine", &cosine, py::arg("a"), py::arg("b"));

  py::enum_<TopAggregation>(m, "TopAggregation")
      .value("MAX", TopAggregation::Max)
      .value("SUM", TopAggregation::Sum);

  py::class_<ScoreParams>(m, "ScoreParams")
      .def(py::init<>())
      .def_readwrite("tau_ms", &ScoreParams::tau_ms)
      .def_readwrite("top_halfwidth_ms", &ScoreParams::top_halfwidth_ms)
      .def_readwrite("top_aggregation", &ScoreParams::top_aggregation)
      .def_readwrite("history_sources", &ScoreParams::history_sources);

  py::class_<AgencyContribution>(m, "AgencyContribution")
      .def_readonly("agency", &AgencyContribution::agency)
      .def_readonly("similarity", &AgencyContribution::similarity);

  py::class_<ScoreRecord>(m, "ScoreRecord")
      .def_readonly("id", &ScoreRecord::id)
      .def_readonly("keyword", &ScoreRecord::keyword)
      .def_readonly("agency", &ScoreRecord::agency)
      .def_readonly("kind", &ScoreRecord::kind)
      .def_readonly("ts_ms", &ScoreRecord::ts_ms)
      .def_readonly("novelty", &ScoreRecord::novelty)
      .def_readonly("topicality", &ScoreRecord::topicality)
      .def_readonly("novelty_count", &ScoreRecord::novelty_count)
      .def_readonly("top_contributions", &ScoreRecord::top_contributions)
      .def("__repr__", [](const ScoreRecord& r) {
        return "<ScoreRecord " + r.id + " nov=" + std::to_string(r.novelty) +
               " top=" + std::to_string(r.topicality) + ">";
      });

  py::class_<StreamOptions>(m, "StreamOptions")
      .def(py::init<>())
      .def_readwrite("params", &StreamOptions::params)
      .def_readwrite("keyword_filter", &StreamOptions::keyword_filter)
      .def_readwrite("kind_filter", &StreamOptions::kind_filter)
      .def_readwrite("workers", &StreamOptions::workers)
      .def_readwrite("batch_size", &StreamOptions::batch_size);

  m.def("score_articles", &score_articles, py::arg("articles"), py::arg("table"),
        py::arg("options") = StreamOptions{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<ClassifyResult>(m, "ClassifyResult")
      .def_readonly("nov_mean", &ClassifyResult::nov_mean)
      .def_readonly("top_mean", &ClassifyResult::top_mean)
      .def_readonly("nov_high", &ClassifyResult::nov_high)
      .def_readonly("top_high", &ClassifyResult::top_high);
  m.def("classify", &classify, py::arg("records"));

  py::class_<BinSpec>(m, "BinSpec")
      .def_readonly("edges_ms", &BinSpec::edges_ms)
      .def_static("log_minutes", &BinSpec::log_minutes, py::arg("lo_min"),
                  py::arg("hi_min"), py::arg("per_decade"))
      .def_static("linear_minutes", &BinSpec::linear_minutes, py::arg("lo_min"),
                  py::arg("hi_min"), py::arg("width_min"));

  py::class_<LagBin>(m, "LagBin")
      .def_readonly("lo_min", &LagBin::lo_min)
      .def_readonly("hi_min", &LagBin::hi_min)
      .def_readonly("mean_sim", &LagBin::mean_sim)
      .def_readonly("pairs", &LagBin::pairs);

  py::class_<SimilarityCurve>(m, "SimilarityCurve")
      .def_readonly("bins", &SimilarityCurve::bins)
      .def("save_csv", &SimilarityCurve::save_csv, py::arg("path"),
           py::arg("provenance") = std::string_view{});

  py::class_<AutoSimOptions>(m, "AutoSimOptions")
      .def(py::init<>())
      .def_readwrite("bins", &AutoSimOptions::bins)
      .def_readwrite("pair_cap", &AutoSimOptions::pair_cap)
      .def_readwrite("seed", &AutoSimOptions::seed)
      .def_readwrite("workers", &AutoSimOptions::workers);
  m.def("auto_similarity", &auto_similarity, py::arg("articles"),
        py::arg("table"), py::arg("options") = AutoSimOptions{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<CrossSimOptions>(m, "CrossSimOptions")
      .def(py::init<>())
      .def_readwrite("bins", &CrossSimOptions::bins)
      .def_readwrite("workers", &CrossSimOptions::workers);
  m.def("cross_similarity", &cross_similarity, py::arg("reference"),
        py::arg("others"), py::arg("table"),
        py::arg("options") = CrossSimOptions{},
        py::call_guard<py::gil_scoped_release>());

  py::enum_<Measure>(m, "Measure")
      .value("VOLATILITY", Measure::Volatility)
      .value("NTRADES", Measure::NTrades)
      .value("VOLUME", Measure::Volume);
  m.def("parse_measure", &parse_measure, py::arg("text"));

  py::class_<MinuteBar>(m, "MinuteBar")
      .def(py::init<>())
      .def_readwrite("ticker", &MinuteBar::ticker)
      .def_readwrite("date_days", &MinuteBar::date_days)
      .def_readwrite("minute_of_day", &MinuteBar::minute_of_day)
      .def_readwrite("price", &MinuteBar::price)
      .def_readwrite("n_trades", &MinuteBar::n_trades)
      .def_readwrite("volume", &MinuteBar::volume);
  m.def("ingest_bars", &ingest_bars, py::arg("path"),
        py::call_guard<py::gil_scoped_release>());
  m.def("save_bars_csv", &save_bars_csv, py::arg("path"), py::arg("bars"),
        py::arg("provenance") = std::string_view{});

  py::class_<ActivityPanel>(m, "ActivityPanel")
      .def_readonly("ticker", &ActivityPanel::ticker)
      .def_readonly("measure", &ActivityPanel::measure)
      .def_readonly("dates", &ActivityPanel::dates)
      .def_readonly("values", &ActivityPanel::values);

  py::class_<ActivitySeries>(m, "ActivitySeries")
      .def_readonly("normalized", &ActivitySeries::normalized)
      .def_readonly("date_means", &ActivitySeries::date_means)
      .def_readonly("minute_means", &ActivitySeries::minute_means)
      .def_readonly("dropped_dates", &ActivitySeries::dropped_dates);

  m.def("raw_activity", &raw_activity, py::arg("bars"), py::arg("ticker"),
        py::arg("measure"), py::call_guard<py::gil_scoped_release>());
  m.def("normalize", &normalize, py::arg("panel"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ResponseCurve>(m, "ResponseCurve")
      .def_readonly("lag_lo", &ResponseCurve::lag_lo)
      .def_readonly("mean", &ResponseCurve::mean)
      .def_readonly("events", &ResponseCurve::events)
      .def("lag_at", &ResponseCurve::lag_at, py::arg("i"))
      .def("__len__", &ResponseCurve::size)
      .def("save_csv", &ResponseCurve::save_csv, py::arg("path"),
           py::arg("provenance") = std::string_view{});

  py::class_<EventStudyOptions>(m, "EventStudyOptions")
      .def(py::init<>())
      .def_readwrite("lag_lo", &EventStudyOptions::lag_lo)
      .def_readwrite("lag_hi", &EventStudyOptions::lag_hi)
      .def_readwrite("premarket_to_open", &EventStudyOptions::premarket_to_open);
  m.def("event_study", &event_study, py::arg("series"), py::arg("event_ts_ms"),
        py::arg("options") = EventStudyOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("window_mean", &window_mean, py::arg("curve"), py::arg("lo"),
        py::arg("hi"));

  py::class_<ExpFit>(m, "ExpFit")
      .def_readonly("amplitude", &ExpFit::amplitude)
      .def_readonly("rate", &ExpFit::rate)
      .def_readonly("offset", &ExpFit::offset)
      .def_readonly("residual", &ExpFit::residual)
      .def_readonly("lags_used", &ExpFit::lags_used);

  py::class_<ExpFitOptions>(m, "ExpFitOptions")
      .def(py::init<>())
      .def_readwrite("lag_lo", &ExpFitOptions::lag_lo)
      .def_readwrite("lag_hi", &ExpFitOptions::lag_hi)
      .def_readwrite("rate_lo", &ExpFitOptions::rate_lo)
      .def_readwrite("rate_hi", &ExpFitOptions::rate_hi)
      .def_readwrite("grid_points", &ExpFitOptions::grid_points)
      .def_readwrite("max_iters", &ExpFitOptions::max_iters);
  m.def("fit_exponential", &fit_exponential, py::arg("curve"),
        py::arg("options") = ExpFitOptions{});

  py::class_<PowerFit>(m, "PowerFit")
      .def_readonly("exponent", &PowerFit::exponent)
      .def_readonly("intercept_ln", &PowerFit::intercept_ln)
      .def_readonly("r2", &PowerFit::r2)
      .def_readonly("bins_used", &PowerFit::bins_used);
  m.def("fit_power_law", &fit_power_law, py::arg("curve"),
        py::arg("lo_min") = 100.0, py::arg("hi_min") = 100000.0);

  py::class_<SynthSpec>(m, "SynthSpec")
      .def(py::init<>())
      .def_readwrite("seed", &SynthSpec::seed)
      .def_readwrite("n_articles", &SynthSpec::n_articles)
      .def_readwrite("n_agencies", &SynthSpec::n_agencies)
      .def_readwrite("n_keywords", &SynthSpec::n_keywords)
      .def_readwrite("namespaced_vocab", &SynthSpec::namespaced_vocab)
      .def_readwrite("vocab_size", &SynthSpec::vocab_size)
      .def_readwrite("zipf_exponent", &SynthSpec::zipf_exponent)
      .def_readwrite("tokens_per_article", &SynthSpec::tokens_per_article)
      .def_readwrite("cluster_overlap", &SynthSpec::cluster_overlap)
      .def_readwrite("chain_continue_p", &SynthSpec::chain_continue_p)
      .def_readwrite("chain_max", &SynthSpec::chain_max)
      .def_readwrite("copy_p", &SynthSpec::copy_p)
      .def_readwrite("copy_lag_max_ms", &SynthSpec::copy_lag_max_ms)
      .def_readwrite("followup_lag_min_ms", &SynthSpec::followup_lag_min_ms)
      .def_readwrite("followup_lag_max_ms", &SynthSpec::followup_lag_max_ms)
      .def_readwrite("start_ts_ms", &SynthSpec::start_ts_ms)
      .def_readwrite("horizon_ms", &SynthSpec::horizon_ms)
      .def_readwrite("ticker", &SynthSpec::ticker)
      .def_readwrite("n_dates", &SynthSpec::n_dates)
      .def_readwrite("u_amplitude", &SynthSpec::u_amplitude)
      .def_readwrite("date_sigma", &SynthSpec::date_sigma)
      .def_readwrite("noise_sigma", &SynthSpec::noise_sigma)
      .def_readwrite("impulse_amplitude", &SynthSpec::impulse_amplitude)
      .def_readwrite("impulse_rate", &SynthSpec::impulse_rate)
      .def_readwrite("impulse_offset", &SynthSpec::impulse_offset)
      .def_readwrite("vol_scale", &SynthSpec::vol_scale)
      .def_readwrite("base_price", &SynthSpec::base_price)
      .def_readwrite("base_volume", &SynthSpec::base_volume)
      .def_readwrite("sa_exponent", &SynthSpec::sa_exponent)
      .def_readwrite("sa_scale", &SynthSpec::sa_scale)
      .def_readwrite("sa_noise_sigma", &SynthSpec::sa_noise_sigma)
      .def_readwrite("sa_pairs_per_bin", &SynthSpec::sa_pairs_per_bin)
      .def("validate", &SynthSpec::validate);

  py::class_<LedgerEntry>(m, "LedgerEntry")
      .def_readonly("id", &LedgerEntry::id)
      .def_readonly("cluster", &LedgerEntry::cluster)
      .def_readonly("chain_index", &LedgerEntry::chain_index)
      .def_readonly("copies", &LedgerEntry::copies)
      .def_readonly("copy_of", &LedgerEntry::copy_of)
      .def_readonly("has_predictions", &LedgerEntry::has_predictions)
      .def_readonly("nov", &LedgerEntry::nov)
      .def_readonly("top", &LedgerEntry::top);

  py::class_<GeneratedNews>(m, "GeneratedNews")
      .def_readonly("articles", &GeneratedNews::articles)
      .def_readonly("ledger", &GeneratedNews::ledger)
      .def_readonly("alert_ts", &GeneratedNews::alert_ts);
  m.def("gen_news", &gen_news, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<SynthFiles>(m, "SynthFiles")
      .def_readonly("articles", &SynthFiles::articles)
      .def_readonly("alert_ts", &SynthFiles::alert_ts);
  m.def("gen_news_files", &gen_news_files, py::arg("spec"),
        py::arg("news_path"), py::arg("ledger_path"),
        py::call_guard<py::gil_scoped_release>());
  m.def("load_ledger", &load_ledger, py::arg("path"),
        py::call_guard<py::gil_scoped_release>());
  m.def("gen_bars", &gen_bars, py::arg("spec"), py::arg("event_ts_ms"),
        py::call_guard<py::gil_scoped_release>());
  m.def("gen_power_law_curve", &gen_power_law_curve, py::arg("spec"),
        py::arg("lo_min") = 1.0, py::arg("hi_min") = 525600.0,
        py::arg("per_decade") = 10,
        py::call_guard<py::gil_scoped_release>());
}

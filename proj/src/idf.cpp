#include "newspulse/idf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "newspulse/csv.hpp"
#include "newspulse/errors.hpp"

namespace newspulse {

void IdfTable::Builder::add(const std::vector<std::string>& tokens) {
  // count each token once per document even if the caller did not dedupe
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto it = index_.find(std::string_view(tok));
    std::uint32_t id;
    if (it == index_.end()) {
      id = static_cast<std::uint32_t>(order_.size());
      order_.push_back(tok);
      index_.emplace(tok, id);
      freq_.push_back(0);
    } else {
      id = it->second;
    }
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto id : ids) ++freq_[id];
  ++docs_;
}

IdfTable IdfTable::Builder::finish() && {
  if (docs_ == 0) throw InputError("cannot build idf table from an empty corpus");
  IdfTable t;
  t.tokens_ = std::move(order_);
  t.doc_freq_ = std::move(freq_);
  t.total_docs_ = docs_;
  t.idf_.resize(t.tokens_.size());
  for (std::size_t i = 0; i < t.tokens_.size(); ++i)
    t.idf_[i] = std::log(double(t.total_docs_) / double(t.doc_freq_[i]));
  t.rebuild_index();
  return t;
}

void IdfTable::rebuild_index() {
  index_.clear();
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    index_.emplace(tokens_[i], static_cast<std::uint32_t>(i));
}

std::optional<std::uint32_t> IdfTable::token_id(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t IdfTable::doc_freq(std::string_view token) const {
  auto id = token_id(token);
  return id ? doc_freq_[*id] : 0;
}

std::optional<double> IdfTable::idf(std::string_view token) const {
  auto id = token_id(token);
  if (!id) return std::nullopt;
  return idf_[*id];
}

void IdfTable::save_tsv(const std::filesystem::path& path) const {
  std::vector<std::uint32_t> order(tokens_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = std::uint32_t(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return tokens_[a] < tokens_[b];
  });

  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path.string());
  out << "#total_docs\t" << total_docs_ << "\n";
  char buf[64];
  for (auto id : order) {
    std::snprintf(buf, sizeof(buf), "%.12g", idf_[id]);
    out << tokens_[id] << '\t' << doc_freq_[id] << '\t' << buf << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

IdfTable IdfTable::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path.string());

  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) -> InputError {
    return InputError(path.string() + ":" + std::to_string(lineno) + ": " + why);
  };

  if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  constexpr std::string_view kHeader = "#total_docs\t";
  if (line.rfind(kHeader, 0) != 0) throw fail("expected #total_docs header");
  std::uint64_t total = parse_u64(line.substr(kHeader.size()), "total_docs");
  if (total == 0) throw fail("total_docs must be positive");

  IdfTable t;
  t.total_docs_ = total;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f1 = line.find('\t');
    auto f2 = f1 == std::string::npos ? std::string::npos : line.find('\t', f1 + 1);
    if (f2 == std::string::npos) throw fail("expected token<TAB>doc_freq<TAB>idf");
    std::string token = line.substr(0, f1);
    if (token.empty()) throw fail("empty token");
    std::uint64_t freq = parse_u64(line.substr(f1 + 1, f2 - f1 - 1), "doc_freq");
    double printed = parse_double(line.substr(f2 + 1), "idf");
    if (freq == 0 || freq > total) throw fail("doc_freq out of range for " + token);
    // idf is recomputed from the counts; the printed column is a consistency check
    double idf = std::log(double(total) / double(freq));
    if (std::abs(idf - printed) > 1e-9 * std::max(1.0, std::abs(idf)))
      throw fail("idf column inconsistent with doc_freq for " + token);
    if (t.index_.find(std::string_view(token)) != t.index_.end())
      throw fail("duplicate token " + token);
    auto id = static_cast<std::uint32_t>(t.tokens_.size());
    t.tokens_.push_back(std::move(token));
    t.doc_freq_.push_back(freq);
    t.idf_.push_back(idf);
    t.index_.emplace(t.tokens_.back(), id);
  }
  if (t.tokens_.empty()) throw InputError(path.string() + ": no vocabulary rows");
  return t;
}

IdfScope parse_idf_scope(std::string_view text) {
  if (text == "global") return IdfScope::Global;
  if (text == "keyword") return IdfScope::Keyword;
  throw InputError("unknown idf scope: \"" + std::string(text) + "\"");
}

const char* to_string(IdfScope scope) {
  return scope == IdfScope::Global ? "global" : "keyword";
}

IdfTable build_idf(const std::vector<Article>& articles, IdfScope scope,
                   std::string_view keyword) {
  if (scope == IdfScope::Keyword && keyword.empty())
    throw InputError("keyword-scoped idf requires a keyword");
  IdfTable::Builder b;
  for (const auto& a : articles) {
    if (!is_scorable(a.kind)) continue;
    if (scope == IdfScope::Keyword &&
        std::find(a.keywords.begin(), a.keywords.end(), keyword) == a.keywords.end())
      continue;
    b.add(a.tokens);
  }
  if (b.docs() == 0) throw InputError("no scorable articles for idf corpus");
  return std::move(b).finish();
}

}  // namespace newspulse

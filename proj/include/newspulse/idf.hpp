#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newspulse/article.hpp"

namespace newspulse {

// Transparent hashing so tables can be probed with string_view keys.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};
using StringIdMap =
    std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>;

// Corpus document-frequency statistics. idf(w) = ln(total_docs / doc_freq(w)),
// so a term present in every document weighs exactly zero and rarer terms
// weigh more. Token ids are dense and assigned in first-seen order.
class IdfTable {
 public:
  class Builder {
   public:
    // One document's tokens; duplicates within the call count once.
    void add(const std::vector<std::string>& tokens);
    std::uint64_t docs() const { return docs_; }
    // Throws InputError when no documents were added.
    IdfTable finish() &&;

   private:
    std::vector<std::string> order_;
    StringIdMap index_;
    std::vector<std::uint64_t> freq_;
    std::uint64_t docs_ = 0;
  };

  IdfTable() = default;

  std::uint64_t total_docs() const { return total_docs_; }
  std::size_t vocab_size() const { return tokens_.size(); }

  std::optional<std::uint32_t> token_id(std::string_view token) const;
  std::uint64_t doc_freq(std::string_view token) const;      // 0 when absent
  std::optional<double> idf(std::string_view token) const;   // nullopt when absent

  const std::string& token_text(std::uint32_t id) const { return tokens_[id]; }
  std::uint64_t doc_freq_by_id(std::uint32_t id) const { return doc_freq_[id]; }
  double idf_by_id(std::uint32_t id) const { return idf_[id]; }

  // Tab-separated snapshot, tokens sorted bytewise so output is reproducible.
  void save_tsv(const std::filesystem::path& path) const;
  static IdfTable load_tsv(const std::filesystem::path& path);

 private:
  friend class Builder;
  void rebuild_index();

  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> doc_freq_;
  std::vector<double> idf_;
  StringIdMap index_;
  std::uint64_t total_docs_ = 0;
};

enum class IdfScope { Global, Keyword };

IdfScope parse_idf_scope(std::string_view text);
const char* to_string(IdfScope scope);

// Document frequencies over scorable articles. Keyword scope restricts the
// corpus to articles tagged with `keyword`.
IdfTable build_idf(const std::vector<Article>& articles,
                   IdfScope scope = IdfScope::Global,
                   std::string_view keyword = {});

}  // namespace newspulse

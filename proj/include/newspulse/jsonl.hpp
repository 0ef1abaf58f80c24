#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "newspulse/article.hpp"

namespace newspulse {

// Streaming reader over a JSON-lines news file. Records must be sorted by
// timestamp; violations and malformed lines throw InputError naming the spot.
class NewsReader {
 public:
  explicit NewsReader(const std::filesystem::path& path);

  std::optional<Article> next();
  std::size_t line_number() const { return lineno_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::string line_;
  std::size_t lineno_ = 0;
  std::int64_t last_ts_ = INT64_MIN;
  std::string last_id_;
};

std::vector<Article> ingest_news(const std::filesystem::path& path);

std::string to_jsonl_line(const Article& a);

}  // namespace newspulse

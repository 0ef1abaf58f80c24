#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace newspulse {

enum class EventKind : std::uint8_t { Alert, Headline, Story, Title };

const char* to_string(EventKind kind);
EventKind parse_event_kind(std::string_view text);  // throws InputError on unknown kind

// Kinds short enough to carry signal per token: alerts, headlines, titles.
// Full story bodies are kept out of the similarity machinery.
bool is_scorable(EventKind kind);

// One news item. `tokens` is always tokenize(text); use make_article to keep
// the two in sync.
struct Article {
  std::string id;
  std::string agency;
  std::int64_t ts_ms = 0;  // UTC epoch milliseconds
  std::vector<std::string> keywords;
  EventKind kind = EventKind::Headline;
  std::string text;
  std::vector<std::string> tokens;
};

Article make_article(std::string id, std::string agency, std::int64_t ts_ms,
                     std::vector<std::string> keywords, EventKind kind,
                     std::string text);

// Lowercases ASCII letters, splits on any byte that is not a letter, digit,
// period or hyphen, strips leading/trailing periods and hyphens from each
// piece, drops empties, and deduplicates preserving first occurrence.
// Bytes >= 0x80 are treated as letters and passed through unchanged.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace newspulse

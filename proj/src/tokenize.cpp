#include "newspulse/article.hpp"

#include <unordered_set>

#include "newspulse/errors.hpp"

namespace newspulse {

namespace {

inline bool is_token_byte(unsigned char c) {
  if (c >= 0x80) return true;  // multi-byte sequences ride along as letters
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '.' || c == '-';
}

inline char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : char(c);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::string cur;
  auto flush = [&] {
    // strip leading/trailing periods and hyphens left by the split
    std::size_t b = 0, e = cur.size();
    while (b < e && (cur[b] == '.' || cur[b] == '-')) ++b;
    while (e > b && (cur[e - 1] == '.' || cur[e - 1] == '-')) --e;
    if (e > b) {
      std::string tok = cur.substr(b, e - b);
      if (seen.insert(tok).second) out.push_back(std::move(tok));
    }
    cur.clear();
  };
  for (unsigned char c : text) {
    if (is_token_byte(c)) {
      cur.push_back(lower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Alert: return "ALERT";
    case EventKind::Headline: return "HEADLINE";
    case EventKind::Story: return "STORY";
    case EventKind::Title: return "TITLE";
  }
  return "HEADLINE";
}

EventKind parse_event_kind(std::string_view text) {
  if (text == "ALERT") return EventKind::Alert;
  if (text == "HEADLINE") return EventKind::Headline;
  if (text == "STORY") return EventKind::Story;
  if (text == "TITLE") return EventKind::Title;
  throw InputError("unknown event kind: \"" + std::string(text) + "\"");
}

bool is_scorable(EventKind kind) { return kind != EventKind::Story; }

Article make_article(std::string id, std::string agency, std::int64_t ts_ms,
                     std::vector<std::string> keywords, EventKind kind,
                     std::string text) {
  Article a;
  a.id = std::move(id);
  a.agency = std::move(agency);
  a.ts_ms = ts_ms;
  a.keywords = std::move(keywords);
  a.kind = kind;
  a.tokens = tokenize(text);
  a.text = std::move(text);
  return a;
}

}  // namespace newspulse

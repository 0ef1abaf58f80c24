#include "newspulse/jsonl.hpp"

#include <json.hpp>

#include "newspulse/errors.hpp"

namespace newspulse {

using nlohmann::json;

NewsReader::NewsReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw InputError("cannot open news file: " + path.string());
}

std::optional<Article> NewsReader::next() {
  while (std::getline(in_, line_)) {
    ++lineno_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.empty()) continue;

    json j;
    try {
      j = json::parse(line_);
    } catch (const json::parse_error& e) {
      throw InputError(path_.string() + ":" + std::to_string(lineno_) +
                       ": bad JSON: " + e.what());
    }
    auto fail = [&](const std::string& why) -> InputError {
      return InputError(path_.string() + ":" + std::to_string(lineno_) + ": " + why);
    };
    if (!j.is_object()) throw fail("record is not an object");

    Article a;
    try {
      a.id = j.at("id").get<std::string>();
      a.agency = j.at("agency").get<std::string>();
      a.ts_ms = j.at("ts").get<std::int64_t>();
      a.keywords = j.at("keywords").get<std::vector<std::string>>();
      a.kind = parse_event_kind(j.at("kind").get<std::string>());
      a.text = j.at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw fail(std::string("bad record: ") + e.what());
    }
    if (a.id.empty()) throw fail("empty id");
    if (a.agency.empty()) throw fail("empty agency");
    for (const auto& k : a.keywords)
      if (k.empty()) throw fail("empty keyword in record " + a.id);

    if (a.ts_ms < last_ts_)
      throw fail("timestamps out of order: " + a.id + " (ts " +
                 std::to_string(a.ts_ms) + ") after " + last_id_ + " (ts " +
                 std::to_string(last_ts_) + ")");
    last_ts_ = a.ts_ms;
    last_id_ = a.id;

    a.tokens = tokenize(a.text);
    return a;
  }
  if (in_.bad()) throw InputError("read failed: " + path_.string());
  return std::nullopt;
}

std::vector<Article> ingest_news(const std::filesystem::path& path) {
  NewsReader reader(path);
  std::vector<Article> out;
  while (auto a = reader.next()) out.push_back(std::move(*a));
  return out;
}

std::string to_jsonl_line(const Article& a) {
  json j;
  j["id"] = a.id;
  j["agency"] = a.agency;
  j["ts"] = a.ts_ms;
  j["keywords"] = a.keywords;
  j["kind"] = to_string(a.kind);
  j["text"] = a.text;
  return j.dump();
}

}  // namespace newspulse

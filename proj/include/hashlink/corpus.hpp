#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hashlink {

// A keyword unit extracted from an article. Frozen phrases are named entities
// and match as one contiguous unit; non-frozen phrases hold a single term.
struct KeywordPhrase {
  std::vector<std::string> terms;  // lowercase
  bool frozen = false;

  bool operator==(const KeywordPhrase&) const = default;
};

struct Article {
  std::string id;  // canonical URL path, unique within a corpus
  std::int64_t published_at = 0;  // UTC seconds
  std::string headline;
  std::string subheadline;
  std::string body;
  std::vector<KeywordPhrase> keywords;  // filled by the keyword extractor
};

struct Tweet {
  std::string id;
  std::int64_t created_at = 0;  // UTC seconds
  std::string raw_text;
  std::vector<std::string> tokens;    // stemmed terms, filled by the normalizer
  std::vector<std::string> hashtags;  // lowercase, sigil-free
  std::vector<std::string> urls;
};

// Half-open processing period [start, end); consecutive daily windows
// partition the stream.
struct StreamWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string label;
};

// "YYYY-MM-DDTHH:MM:SSZ" <-> UTC epoch seconds. Throws ParseError.
std::int64_t parse_iso8601_utc(const std::string& s);
std::string format_iso8601_utc(std::int64_t t);

// Maximal runs of word characters and '_' following '#', lowercased.
std::vector<std::string> extract_hashtags(const std::string& raw_text);
// Substrings starting "http://" or "https://" up to whitespace.
std::vector<std::string> extract_urls(const std::string& raw_text);

std::size_t count_codepoints(const std::string& utf8);

struct TweetLoadOptions {
  std::size_t max_text_codepoints = 280;
  // When true, malformed records are counted and skipped instead of throwing.
  bool permissive = false;
};

// One JSON record per line: {"id", "published_at", "headline", "subheadline", "body"}.
// Returns articles sorted ascending by published_at (stable). Throws ParseError
// with the line number, IntegrityError on duplicate ids.
std::vector<Article> load_articles(const std::string& path);

// Streaming reader over a tweet file, one JSON record per line:
// {"id", "created_at", "text"}. Yields tweets in file order with hashtags
// and urls derived from the text.
class TweetStream {
 public:
  TweetStream(const std::string& path, TweetLoadOptions opts = {});
  ~TweetStream();
  TweetStream(TweetStream&&) noexcept;
  TweetStream& operator=(TweetStream&&) noexcept;

  std::optional<Tweet> next();
  std::size_t skipped() const { return skipped_; }

 private:
  struct Impl;
  Impl* impl_ = nullptr;
  std::size_t skipped_ = 0;
};

std::vector<Tweet> load_tweets(const std::string& path, TweetLoadOptions opts = {},
                               std::size_t* skipped = nullptr);

void save_articles(const std::string& path, const std::vector<Article>& articles);
void save_tweets(const std::string& path, const std::vector<Tweet>& tweets);

// Pure timestamp filter over time-sorted inputs: keeps items with
// timestamp in [window.start, window.end).
std::pair<std::vector<Article>, std::vector<Tweet>> replay(const std::vector<Article>& articles,
                                                           const std::vector<Tweet>& tweets,
                                                           const StreamWindow& window);

}  // namespace hashlink

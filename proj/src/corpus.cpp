#include "hashlink/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "hashlink/errors.hpp"
#include "json.hpp"

namespace hashlink {

namespace {

using nlohmann::json;

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

// Days from civil date, Howard Hinnant's algorithm. Valid far beyond our range.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

}  // namespace

std::int64_t parse_iso8601_utc(const std::string& s) {
  int y, mo, d, h, mi, se;
  char z;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &se, &z) != 7 ||
      z != 'Z' || s.size() != 20) {
    throw ParseError("bad ISO-8601 UTC timestamp: '" + s + "'");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60 || h < 0 || mi < 0 ||
      se < 0) {
    throw ParseError("out-of-range ISO-8601 timestamp: '" + s + "'");
  }
  return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
         h * 3600 + mi * 60 + se;
}

std::string format_iso8601_utc(std::int64_t t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
  return buf;
}

std::vector<std::string> extract_hashtags(const std::string& raw_text) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < raw_text.size(); ++i) {
    if (raw_text[i] != '#') continue;
    std::size_t j = i + 1;
    std::string tag;
    while (j < raw_text.size() && is_word_char(static_cast<unsigned char>(raw_text[j]))) {
      tag.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw_text[j]))));
      ++j;
    }
    if (!tag.empty()) tags.push_back(std::move(tag));
    i = j - 1;
  }
  return tags;
}

std::vector<std::string> extract_urls(const std::string& raw_text) {
  std::vector<std::string> urls;
  for (std::size_t i = 0; i < raw_text.size();) {
    if (raw_text.compare(i, 7, "http://") == 0 || raw_text.compare(i, 8, "https://") == 0) {
      std::size_t j = i;
      while (j < raw_text.size() && !std::isspace(static_cast<unsigned char>(raw_text[j]))) ++j;
      urls.push_back(raw_text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return urls;
}

std::size_t count_codepoints(const std::string& utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<Article> load_articles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open article file: " + path);
  std::vector<Article> articles;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      Article a;
      a.id = rec.at("id").get<std::string>();
      a.published_at = parse_iso8601_utc(rec.at("published_at").get<std::string>());
      a.headline = rec.at("headline").get<std::string>();
      a.subheadline = rec.at("subheadline").get<std::string>();
      a.body = rec.at("body").get<std::string>();
      if (a.id.empty()) throw ParseError("empty article id");
      if (a.headline.empty()) throw ParseError("empty headline");
      if (!seen.insert(a.id).second) {
        throw IntegrityError("duplicate article id '" + a.id + "' at " + path + ":" +
                             std::to_string(lineno));
      }
      articles.push_back(std::move(a));
    } catch (const IntegrityError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("bad article record at " + path + ":" + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  std::stable_sort(articles.begin(), articles.end(),
                   [](const Article& a, const Article& b) { return a.published_at < b.published_at; });
  return articles;
}

struct TweetStream::Impl {
  std::ifstream in;
  TweetLoadOptions opts;
  std::string path;
  std::size_t lineno = 0;
  std::unordered_set<std::string> seen_ids;
};

TweetStream::TweetStream(const std::string& path, TweetLoadOptions opts) : impl_(new Impl) {
  impl_->in.open(path);
  impl_->opts = opts;
  impl_->path = path;
  if (!impl_->in) {
    delete impl_;
    impl_ = nullptr;
    throw ConfigError("cannot open tweet file: " + path);
  }
}

TweetStream::~TweetStream() { delete impl_; }

TweetStream::TweetStream(TweetStream&& other) noexcept
    : impl_(other.impl_), skipped_(other.skipped_) {
  other.impl_ = nullptr;
}

TweetStream& TweetStream::operator=(TweetStream&& other) noexcept {
  if (this != &other) {
    delete impl_;
    impl_ = other.impl_;
    skipped_ = other.skipped_;
    other.impl_ = nullptr;
  }
  return *this;
}

std::optional<Tweet> TweetStream::next() {
  std::string line;
  while (impl_ && std::getline(impl_->in, line)) {
    ++impl_->lineno;
    if (line.empty()) continue;
    try {
      json rec = json::parse(line);
      Tweet t;
      t.id = rec.at("id").get<std::string>();
      t.created_at = parse_iso8601_utc(rec.at("created_at").get<std::string>());
      t.raw_text = rec.at("text").get<std::string>();
      if (t.id.empty()) throw ParseError("empty tweet id");
      if (count_codepoints(t.raw_text) > impl_->opts.max_text_codepoints) {
        throw ParseError("tweet text over " + std::to_string(impl_->opts.max_text_codepoints) +
                         " code points");
      }
      if (!impl_->seen_ids.insert(t.id).second) {
        throw IntegrityError("duplicate tweet id '" + t.id + "' at " + impl_->path + ":" +
                             std::to_string(impl_->lineno));
      }
      t.hashtags = extract_hashtags(t.raw_text);
      t.urls = extract_urls(t.raw_text);
      return t;
    } catch (const std::exception& e) {
      if (impl_->opts.permissive) {
        ++skipped_;
        continue;
      }
      if (dynamic_cast<const IntegrityError*>(&e)) throw;
      throw ParseError("bad tweet record at " + impl_->path + ":" + std::to_string(impl_->lineno) +
                       ": " + e.what());
    }
  }
  return std::nullopt;
}

std::vector<Tweet> load_tweets(const std::string& path, TweetLoadOptions opts,
                               std::size_t* skipped) {
  TweetStream stream(path, opts);
  std::vector<Tweet> tweets;
  while (auto t = stream.next()) tweets.push_back(std::move(*t));
  if (skipped) *skipped = stream.skipped();
  return tweets;
}

void save_articles(const std::string& path, const std::vector<Article>& articles) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write article file: " + path);
  for (const Article& a : articles) {
    json rec{{"id", a.id},
             {"published_at", format_iso8601_utc(a.published_at)},
             {"headline", a.headline},
             {"subheadline", a.subheadline},
             {"body", a.body}};
    out << rec.dump() << '\n';
  }
}

void save_tweets(const std::string& path, const std::vector<Tweet>& tweets) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write tweet file: " + path);
  for (const Tweet& t : tweets) {
    json rec{{"id", t.id}, {"created_at", format_iso8601_utc(t.created_at)}, {"text", t.raw_text}};
    out << rec.dump() << '\n';
  }
}

std::pair<std::vector<Article>, std::vector<Tweet>> replay(const std::vector<Article>& articles,
                                                           const std::vector<Tweet>& tweets,
                                                           const StreamWindow& window) {
  std::pair<std::vector<Article>, std::vector<Tweet>> out;
  for (const Article& a : articles) {
    if (a.published_at >= window.start && a.published_at < window.end) out.first.push_back(a);
  }
  for (const Tweet& t : tweets) {
    if (t.created_at >= window.start && t.created_at < window.end) out.second.push_back(t);
  }
  return out;
}

}  // namespace hashlink

#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"
#include "hashlink/errors.hpp"

using namespace hashlink;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hashlink-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("iso8601 round-trip and errors") {
  CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601_utc("2013-10-07T00:00:00Z") == 1381104000);
  CHECK(format_iso8601_utc(1381104000) == "2013-10-07T00:00:00Z");
  for (std::int64_t t : {0LL, 1381104000LL, 1385164800LL, 999999999LL}) {
    CHECK(parse_iso8601_utc(format_iso8601_utc(t)) == t);
  }
  CHECK_THROWS_AS(parse_iso8601_utc("2013-10-07 00:00:00"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2013-13-07T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("nonsense"), ParseError);
}

TEST_CASE("hashtag extraction from the stream sample") {
  // Stream-style tweet echoing a headline, with a shortened URL attached.
  const std::string text =
      "FG fears day of reckoning over Enda Kenny #Seanad gamble - The Irish Times - "
      "Mon, Oct 07, http://t.co/8FtnVxV86d";
  CHECK(extract_hashtags(text) == std::vector<std::string>{"seanad"});
  CHECK(extract_urls(text) == std::vector<std::string>{"http://t.co/8FtnVxV86d"});
}

TEST_CASE("hashtag extraction corner cases") {
  CHECK(extract_hashtags("no tags here").empty());
  CHECK(extract_hashtags("#A#b") == std::vector<std::string>{"a", "b"});
  CHECK(extract_hashtags("#buy_a_merkel rocks") == std::vector<std::string>{"buy_a_merkel"});
  CHECK(extract_hashtags("trailing #").empty());
  CHECK(extract_hashtags("##double") == std::vector<std::string>{"double"});
  // never yields '#', whitespace or uppercase
  for (const std::string& tag : extract_hashtags("#MiXeD #with#many #tags_2")) {
    CHECK(tag.find('#') == std::string::npos);
    CHECK(tag.find(' ') == std::string::npos);
    for (char c : tag) CHECK(!(c >= 'A' && c <= 'Z'));
  }
}

TEST_CASE("url extraction") {
  CHECK(extract_urls("go to https://a.example/x and http://b.example") ==
        std::vector<std::string>{"https://a.example/x", "http://b.example"});
  CHECK(extract_urls("no links").empty());
}

TEST_CASE("load_articles sorts by time and validates") {
  TempDir dir;
  SUBCASE("empty file gives empty list") {
    write_file(dir.file("a.jsonl"), "");
    CHECK(load_articles(dir.file("a.jsonl")).empty());
  }
  SUBCASE("records come back time-sorted") {
    write_file(dir.file("a.jsonl"),
               R"({"id":"a/2","published_at":"2013-10-08T00:00:00Z","headline":"Second","subheadline":"","body":""})"
               "\n"
               R"({"id":"a/1","published_at":"2013-10-07T00:00:00Z","headline":"First","subheadline":"","body":""})"
               "\n");
    auto articles = load_articles(dir.file("a.jsonl"));
    REQUIRE(articles.size() == 2);
    CHECK(articles[0].id == "a/1");
    CHECK(articles[1].id == "a/2");
  }
  SUBCASE("duplicate id names the offender") {
    write_file(dir.file("a.jsonl"),
               R"({"id":"a/1","published_at":"2013-10-07T00:00:00Z","headline":"One","subheadline":"","body":""})"
               "\n"
               R"({"id":"a/1","published_at":"2013-10-08T00:00:00Z","headline":"Two","subheadline":"","body":""})"
               "\n");
    CHECK_THROWS_WITH_AS(load_articles(dir.file("a.jsonl")), doctest::Contains("a/1"),
                         IntegrityError);
  }
  SUBCASE("malformed record names the line") {
    write_file(dir.file("a.jsonl"),
               R"({"id":"a/1","published_at":"2013-10-07T00:00:00Z","headline":"One","subheadline":"","body":""})"
               "\nnot json\n");
    CHECK_THROWS_WITH_AS(load_articles(dir.file("a.jsonl")), doctest::Contains(":2"), ParseError);
  }
  SUBCASE("missing file is a config error") {
    CHECK_THROWS_AS(load_articles(dir.file("missing.jsonl")), ConfigError);
  }
}

TEST_CASE("load_tweets derives hashtags and urls, fails fast by default") {
  TempDir dir;
  write_file(dir.file("t.jsonl"),
             R"({"id":"t1","created_at":"2013-10-07T09:00:00Z","text":"Poor Enda Kenny @MayoGAA #stillhurting"})"
             "\n"
             "garbage\n"
             R"({"id":"t2","created_at":"2013-10-07T09:01:00Z","text":"plain"})"
             "\n");
  SUBCASE("fail fast") { CHECK_THROWS_AS(load_tweets(dir.file("t.jsonl")), ParseError); }
  SUBCASE("permissive counts and skips") {
    TweetLoadOptions opts;
    opts.permissive = true;
    std::size_t skipped = 0;
    auto tweets = load_tweets(dir.file("t.jsonl"), opts, &skipped);
    CHECK(skipped == 1);
    REQUIRE(tweets.size() == 2);
    CHECK(tweets[0].hashtags == std::vector<std::string>{"stillhurting"});
    CHECK(tweets[1].hashtags.empty());
  }
}

TEST_CASE("load_tweets enforces the text length cap in code points") {
  TempDir dir;
  std::string longtext(300, 'x');
  write_file(dir.file("t.jsonl"),
             R"({"id":"t1","created_at":"2013-10-07T09:00:00Z","text":")" + longtext + "\"}\n");
  CHECK_THROWS_AS(load_tweets(dir.file("t.jsonl")), ParseError);
  TweetLoadOptions opts;
  opts.max_text_codepoints = 300;
  CHECK(load_tweets(dir.file("t.jsonl"), opts).size() == 1);
  // multibyte characters count once
  CHECK(count_codepoints("caf\xc3\xa9") == 4);
}

TEST_CASE("duplicate tweet ids are rejected") {
  TempDir dir;
  write_file(dir.file("t.jsonl"),
             R"({"id":"t1","created_at":"2013-10-07T09:00:00Z","text":"one"})"
             "\n"
             R"({"id":"t1","created_at":"2013-10-07T09:01:00Z","text":"two"})"
             "\n");
  CHECK_THROWS_WITH_AS(load_tweets(dir.file("t.jsonl")), doctest::Contains("t1"),
                       IntegrityError);
}

TEST_CASE("tweet save/load round-trip") {
  TempDir dir;
  std::vector<Tweet> tweets(2);
  tweets[0].id = "t1";
  tweets[0].created_at = 1381104000;
  tweets[0].raw_text = "hello #world http://x.example/a";
  tweets[1].id = "t2";
  tweets[1].created_at = 1381104060;
  tweets[1].raw_text = "quoted \"text\" and unicode \xc3\xa9";
  save_tweets(dir.file("t.jsonl"), tweets);
  auto loaded = load_tweets(dir.file("t.jsonl"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].raw_text == tweets[0].raw_text);
  CHECK(loaded[0].urls == std::vector<std::string>{"http://x.example/a"});
  CHECK(loaded[1].raw_text == tweets[1].raw_text);
}

TEST_CASE("replay keeps exactly the half-open window") {
  std::vector<Article> articles(3);
  std::vector<Tweet> tweets(3);
  for (int i = 0; i < 3; ++i) {
    articles[i].id = "a" + std::to_string(i);
    articles[i].published_at = 100 + i * 100;
    tweets[i].id = "t" + std::to_string(i);
    tweets[i].created_at = 100 + i * 100;
  }
  SUBCASE("window covering nothing") {
    auto [a, t] = replay(articles, tweets, {1000, 2000, "w"});
    CHECK(a.empty());
    CHECK(t.empty());
  }
  SUBCASE("item exactly at end is excluded") {
    auto [a, t] = replay(articles, tweets, {100, 300, "w"});
    CHECK(a.size() == 2);
    CHECK(t.size() == 2);
  }
  SUBCASE("middle item only") {
    auto [a, t] = replay(articles, tweets, {150, 250, "w"});
    REQUIRE(a.size() == 1);
    CHECK(a[0].id == "a1");
    REQUIRE(t.size() == 1);
    CHECK(t[0].id == "t1");
  }
}

TEST_CASE("replay equals a brute-force timestamp filter on random input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Tweet> tweets(rng() % 40);
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      tweets[i].id = "t" + std::to_string(i);
      tweets[i].created_at = static_cast<std::int64_t>(rng() % 1000);
    }
    std::sort(tweets.begin(), tweets.end(),
              [](const Tweet& a, const Tweet& b) { return a.created_at < b.created_at; });
    StreamWindow w;
    w.start = static_cast<std::int64_t>(rng() % 1000);
    w.end = w.start + 1 + static_cast<std::int64_t>(rng() % 500);
    auto [a, got] = replay({}, tweets, w);
    std::vector<std::string> expect;
    for (const Tweet& t : tweets) {
      if (t.created_at >= w.start && t.created_at < w.end) expect.push_back(t.id);
    }
    std::vector<std::string> ids;
    for (const Tweet& t : got) ids.push_back(t.id);
    CHECK(ids == expect);
  }
}

#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hashlink/matcher.hpp"
#include "hashlink/profiles.hpp"
#include "hashlink/stemmer.hpp"
#include "hashlink/textproc.hpp"

using namespace hashlink;

namespace {

const TokenizerConfig& cfg() {
  static TokenizerConfig c = default_tokenizer_config();
  return c;
}

Tweet make_tweet(const std::string& id, const std::string& text) {
  Tweet t;
  t.id = id;
  t.raw_text = text;
  t.hashtags = extract_hashtags(text);
  t.tokens = normalize_tweet(text, cfg());
  return t;
}

// Spreadsheet-style recomputation of the smoothed tf.idf for one collection:
// weight = tf * (ln((N+1)/(df+1)) + 1) with raw counts.
double expected_weight(std::int64_t tf, std::int64_t df, std::int64_t n) {
  return static_cast<double>(tf) * (std::log((n + 1.0) / (df + 1.0)) + 1.0);
}

}  // namespace

TEST_CASE("tfidf weight formula") {
  CHECK(tfidf_weight(1, 0, 0) == doctest::Approx(std::log(1.0) + 1.0));
  CHECK(tfidf_weight(3, 1, 9) == doctest::Approx(3.0 * (std::log(5.0) + 1.0)));
  // df == N stays positive thanks to the +1 smoothing
  CHECK(tfidf_weight(2, 7, 7) == doctest::Approx(2.0));
  CHECK(tfidf_weight(0, 3, 7) == 0.0);
}

TEST_CASE("local profile from a single bag tweet") {
  TweetBag bag;
  bag.article_id = "a";
  bag.tweet_indices = {0};
  bag.hashtag_counts = {{"seanad", 1}};
  std::map<std::string, TweetBag> bags{{"a", bag}};
  std::vector<Tweet> tweets = {make_tweet("t0", "#seanad kenny reform")};

  auto profiles = build_local_profiles(bags, tweets);
  REQUIRE(profiles.size() == 1);
  const HashtagProfile& p = profiles.at({"a", "seanad"});
  CHECK(p.scope == ProfileScope::local);
  CHECK(p.tweet_count == 1);
  CHECK(p.term_weights.count(porter_stem("kenny")) == 1);
  CHECK(p.term_weights.count(porter_stem("reform")) == 1);
  // the hashtag token itself is an ordinary term after sigil stripping
  CHECK(p.term_weights.count("seanad") == 1);
  for (const auto& [term, w] : p.term_weights) CHECK(w > 0.0);
}

TEST_CASE("hashtag absent from bag tweets gets no profile") {
  TweetBag bag;
  bag.article_id = "a";
  bag.tweet_indices = {0};
  bag.hashtag_counts = {};
  std::map<std::string, TweetBag> bags{{"a", bag}};
  std::vector<Tweet> tweets = {make_tweet("t0", "no tags here")};
  CHECK(build_local_profiles(bags, tweets).empty());
}

TEST_CASE("local profile weights equal a hand recomputation over three bags") {
  // two articles; article a has tags x,y; article b has tag x
  std::vector<Tweet> tweets = {
      make_tweet("t0", "kenny reform vote #x"),
      make_tweet("t1", "kenny budget #x #y"),
      make_tweet("t2", "reform budget #y"),
      make_tweet("t3", "kenny kenny reform #x"),
  };
  TweetBag bag_a;
  bag_a.article_id = "a";
  bag_a.tweet_indices = {0, 1, 2};
  bag_a.hashtag_counts = {{"x", 2}, {"y", 2}};
  TweetBag bag_b;
  bag_b.article_id = "b";
  bag_b.tweet_indices = {3};
  bag_b.hashtag_counts = {{"x", 1}};
  std::map<std::string, TweetBag> bags{{"a", bag_a}, {"b", bag_b}};

  auto profiles = build_local_profiles(bags, tweets);
  REQUIRE(profiles.size() == 3);  // (a,x), (a,y), (b,x) pseudo-documents

  const std::string kenny = porter_stem("kenny");
  const std::string reform = porter_stem("reform");
  const std::string budget = porter_stem("budget");

  // document term counts, by hand:
  //   (a,x): t0+t1 -> kenny 2, reform 1, vote 1, budget 1, x 2, y 1
  //   (a,y): t1+t2 -> kenny 1, budget 2, reform 1, x 1, y 2
  //   (b,x): t3    -> kenny 2, reform 1, x 1
  // df over the 3 documents: kenny 3, reform 3, budget 2, vote 1, x 3, y 2
  const std::int64_t N = 3;
  CHECK(profiles.at({"a", "x"}).term_weights.at(kenny) ==
        doctest::Approx(expected_weight(2, 3, N)));
  CHECK(profiles.at({"a", "x"}).term_weights.at(reform) ==
        doctest::Approx(expected_weight(1, 3, N)));
  CHECK(profiles.at({"a", "x"}).term_weights.at(budget) ==
        doctest::Approx(expected_weight(1, 2, N)));
  CHECK(profiles.at({"a", "x"}).term_weights.at("vote") ==
        doctest::Approx(expected_weight(1, 1, N)));
  CHECK(profiles.at({"a", "y"}).term_weights.at(budget) ==
        doctest::Approx(expected_weight(2, 2, N)));
  CHECK(profiles.at({"b", "x"}).term_weights.at(kenny) ==
        doctest::Approx(expected_weight(2, 3, N)));
  CHECK(profiles.at({"a", "x"}).tweet_count == 2);
  CHECK(profiles.at({"b", "x"}).tweet_count == 1);
}

TEST_CASE("global profiles pool every window tweet with the tag") {
  std::vector<Tweet> tweets = {
      make_tweet("t0", "kenny reform #x"),
      make_tweet("t1", "budget talk #x"),
      make_tweet("t2", "other stuff #y"),
      make_tweet("t3", "no tags at all"),
  };
  auto profiles = build_global_profiles(tweets);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles.at("x").tweet_count == 2);
  CHECK(profiles.at("y").tweet_count == 1);
  CHECK(profiles.at("x").scope == ProfileScope::global);
  // N = 2 pseudo-documents; kenny appears in doc x only
  CHECK(profiles.at("x").term_weights.at(porter_stem("kenny")) ==
        doctest::Approx(expected_weight(1, 1, 2)));
}

TEST_CASE("article profile restricts support to headline+subheadline") {
  Article a;
  a.id = "a";
  a.headline = "Budget vote nears";
  a.subheadline = "Cabinet weighs options";
  // "budget" appears 5 more times in the body; "secret" only in the body
  a.body = "budget budget budget budget budget secret plan";
  Article b;
  b.id = "b";
  b.headline = "Sports roundup";
  b.subheadline = "";
  b.body = "budget mention here too";

  auto profiles = build_article_profiles({a, b}, cfg());
  REQUIRE(profiles.size() == 2);
  const auto& wa = profiles.at("a").term_weights;
  const std::string budget = porter_stem("budget");
  REQUIRE(wa.count(budget) == 1);
  // tf = 1 headline + 5 body = 6; df = 2 (both articles), N = 2
  CHECK(wa.at(budget) == doctest::Approx(expected_weight(6, 2, 2)));
  CHECK(wa.count("secret") == 0);  // body-only term stays out
  CHECK(wa.count(porter_stem("vote")) == 1);

  // single-article corpus: all idf equal, profile proportional to tf
  auto solo = build_article_profiles({a}, cfg());
  const auto& ws = solo.at("a").term_weights;
  CHECK(ws.at(budget) / ws.at(porter_stem("vote")) == doctest::Approx(6.0));
}

TEST_CASE("all weights are finite and nonnegative") {
  std::vector<Tweet> tweets = {make_tweet("t0", "#a solo"), make_tweet("t1", "#b other #a")};
  auto profiles = build_global_profiles(tweets);
  for (const auto& [tag, p] : profiles) {
    for (const auto& [term, w] : p.term_weights) {
      CHECK(std::isfinite(w));
      CHECK(w >= 0.0);
    }
  }
}

TEST_CASE("profiles are deterministic across rebuilds") {
  std::vector<Tweet> tweets = {
      make_tweet("t0", "kenny reform vote #x"),
      make_tweet("t1", "kenny budget #x #y"),
  };
  auto g1 = build_global_profiles(tweets);
  auto g2 = build_global_profiles(tweets);
  REQUIRE(g1.size() == g2.size());
  for (const auto& [tag, p] : g1) {
    CHECK(g2.at(tag).term_weights == p.term_weights);
    CHECK(g2.at(tag).tweet_count == p.tweet_count);
  }
}

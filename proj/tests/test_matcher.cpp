#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hashlink/matcher.hpp"
#include "hashlink/predicates.hpp"
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
  t.urls = extract_urls(text);
  t.tokens = normalize_tweet(text, cfg());
  return t;
}

PredicatePool politics_pool() {
  std::vector<KeywordPhrase> kws{
      {{"enda", "kenny"}, true}, {{"fine", "gael"}, true}, {{"fg"}, false},
      {{"fears"}, false},        {{"seanad"}, false},
  };
  return pool_predicates({build_predicates(kws, "article-1")}, 400);
}

// Brute-force predicate evaluation, the oracle for index-based matching.
bool predicate_fires(const PredicateIndex::Entry& e, const Tweet& t) {
  std::set<std::string> tokens(t.tokens.begin(), t.tokens.end());
  if (e.kind == PredicateKind::pair) {
    return tokens.count(e.match_terms[0]) && tokens.count(e.match_terms[1]);
  }
  if (e.match_terms.empty() || e.match_terms.size() > t.tokens.size()) return false;
  for (std::size_t i = 0; i + e.match_terms.size() <= t.tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < e.match_terms.size(); ++j) {
      if (t.tokens[i + j] != e.match_terms[j]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

std::vector<std::string> brute_force_match(const PredicateIndex& index, const Tweet& t) {
  std::vector<std::string> articles;
  for (const auto& e : index.entries()) {
    if (predicate_fires(e, t)) {
      articles.insert(articles.end(), e.source_articles.begin(), e.source_articles.end());
    }
  }
  std::sort(articles.begin(), articles.end());
  articles.erase(std::unique(articles.begin(), articles.end()), articles.end());
  return articles;
}

}  // namespace

TEST_CASE("index reaches pair predicates from both terms") {
  PredicateIndex index(politics_pool(), cfg());
  Tweet only_fears = make_tweet("t1", "fears alone here");
  Tweet only_seanad = make_tweet("t2", "seanad alone here");
  Tweet both = make_tweet("t3", "fears over seanad vote");
  CHECK(index.match(only_fears).empty());
  CHECK(index.match(only_seanad).empty());
  CHECK(index.match(both) == std::vector<std::string>{"article-1"});
}

TEST_CASE("empty pool yields an empty index") {
  PredicatePool empty;
  PredicateIndex index(empty, cfg());
  CHECK(index.empty());
  CHECK(index.match(make_tweet("t", "anything at all")).empty());
}

TEST_CASE("stream sample tweet matches its article") {
  PredicateIndex index(politics_pool(), cfg());
  Tweet t = make_tweet("t5",
                       "FG fears day of reckoning over Enda Kenny #Seanad gamble - The Irish "
                       "Times - Mon, Oct 07, http://t.co/8FtnVxV86d");
  auto fired = index.matching_predicates(t);
  std::set<std::string> fired_keys;
  for (std::size_t id : fired) fired_keys.insert(index.entries()[id].key);
  CHECK(fired_keys.count("P:enda kenny") == 1);
  CHECK(fired_keys.count("2:fears fg") == 1);
  CHECK(index.match(t) == std::vector<std::string>{"article-1"});
}

TEST_CASE("phrase predicates require contiguous stemmed tokens") {
  PredicateIndex index(politics_pool(), cfg());
  CHECK(index.match(make_tweet("t1", "Enda Kenny speaks")) ==
        std::vector<std::string>{"article-1"});
  // same words, not adjacent: the phrase may not fire (and no pair applies)
  CHECK(index.match(make_tweet("t2", "Enda spoke before Kenny replied")).empty());
  // possessive and case both normalize away
  CHECK(index.match(make_tweet("t3", "enda kenny's plan")) ==
        std::vector<std::string>{"article-1"});
}

TEST_CASE("predicate terms are stemmed at match time") {
  // keyword surface form differs from the tweet's inflection
  std::vector<KeywordPhrase> kws{{{"fears"}, false}, {{"reforming"}, false}};
  PredicatePool pool = pool_predicates({build_predicates(kws, "a")}, 400);
  PredicateIndex stemmed(pool, cfg(), true);
  Tweet t = make_tweet("t", "fear of reform grows");
  CHECK(stemmed.match(t) == std::vector<std::string>{"a"});

  PredicateIndex surface(pool, cfg(), false);
  CHECK(surface.match(t).empty());
}

TEST_CASE("index matching equals brute force on random corpora") {
  std::mt19937_64 rng(23);
  std::vector<std::string> vocab;
  for (int i = 0; i < 60; ++i) vocab.push_back("w" + std::to_string(i));

  for (int corpus = 0; corpus < 10; ++corpus) {
    std::vector<std::vector<FilterPredicate>> lists;
    int n_articles = 3 + static_cast<int>(rng() % 10);
    for (int a = 0; a < n_articles; ++a) {
      std::set<std::string> chosen;
      int n = 2 + static_cast<int>(rng() % 6);
      while (static_cast<int>(chosen.size()) < n) chosen.insert(vocab[rng() % vocab.size()]);
      std::vector<KeywordPhrase> kws;
      for (const auto& t : chosen) kws.push_back({{t}, false});
      if (rng() % 2) {
        kws.push_back({{vocab[rng() % vocab.size()], vocab[rng() % vocab.size()]}, true});
      }
      lists.push_back(build_predicates(kws, "a" + std::to_string(a)));
    }
    PredicatePool pool = pool_predicates(lists, 400);
    PredicateIndex index(pool, cfg());

    for (int i = 0; i < 200; ++i) {
      std::string text;
      int words = 1 + static_cast<int>(rng() % 12);
      for (int w = 0; w < words; ++w) {
        text += vocab[rng() % vocab.size()];
        text.push_back(' ');
      }
      Tweet t = make_tweet("t" + std::to_string(i), text);
      CHECK(index.match(t) == brute_force_match(index, t));
    }
  }
}

TEST_CASE("bags are sound and their hashtag counts recount exactly") {
  PredicateIndex index(politics_pool(), cfg());
  std::vector<Tweet> tweets = {
      make_tweet("t0", "fears over seanad #seanad #vinb"),
      make_tweet("t1", "Enda Kenny said #seanad #seanad"),  // repeated tag counts once
      make_tweet("t2", "irrelevant chatter #noise"),
      make_tweet("t3", "fg fears grow #enda"),
  };
  auto bags = build_bags(index, tweets);
  REQUIRE(bags.size() == 1);
  const TweetBag& bag = bags.at("article-1");
  CHECK(bag.tweet_indices == std::vector<std::uint32_t>{0, 1, 3});
  CHECK(bag.hashtag_counts.at("seanad") == 2);
  CHECK(bag.hashtag_counts.at("vinb") == 1);
  CHECK(bag.hashtag_counts.at("enda") == 1);
  CHECK(bag.hashtag_counts.count("noise") == 0);

  // soundness: each bag tweet fires at least one predicate naming the article
  for (std::uint32_t idx : bag.tweet_indices) {
    bool any = false;
    for (const auto& e : index.entries()) {
      if (predicate_fires(e, tweets[idx]) &&
          std::find(e.source_articles.begin(), e.source_articles.end(), "article-1") !=
              e.source_articles.end()) {
        any = true;
      }
    }
    CHECK(any);
  }

  // counts equal a brute-force recount
  std::map<std::string, std::int64_t> recount;
  for (std::uint32_t idx : bag.tweet_indices) {
    std::set<std::string> tags(tweets[idx].hashtags.begin(), tweets[idx].hashtags.end());
    for (const auto& tag : tags) ++recount[tag];
  }
  CHECK(recount == bag.hashtag_counts);
}

TEST_CASE("bag dump lists fired predicates per assignment") {
  PredicateIndex index(politics_pool(), cfg());
  std::vector<Tweet> tweets = {make_tweet("t0", "fears over seanad")};
  std::ostringstream out;
  dump_bags(index, tweets, out);
  CHECK(out.str() == "article-1\tt0\t2:fears seanad\n");
}

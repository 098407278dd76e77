#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hashlink/corpus.hpp"
#include "hashlink/matcher.hpp"
#include "hashlink/textproc.hpp"

namespace hashlink {

enum class ProfileScope { local, global };

// tf.idf term-weight vector for a hashtag, either per article bag (local)
// or over the window's whole tweet stream (global).
struct HashtagProfile {
  ProfileScope scope = ProfileScope::local;
  std::string article_id;  // empty for global profiles
  std::string tag;
  std::map<std::string, double> term_weights;
  std::int64_t tweet_count = 0;
};

// tf.idf profile of an article: terms from headline + subheadline only,
// term frequency counted over the entire article.
struct ArticleProfile {
  std::string article_id;
  std::map<std::string, double> term_weights;
};

// Smoothed tf.idf: tf * (ln((N+1)/(df+1)) + 1). Positive and defined for
// df = N; raw counts for tf.
double tfidf_weight(std::int64_t tf, std::int64_t df, std::int64_t n_docs);

using LocalProfileKey = std::pair<std::string, std::string>;  // (article_id, tag)

// One pseudo-document per (article, hashtag): the bag tweets containing the
// hashtag. idf is computed over all such pseudo-documents in the window.
std::map<LocalProfileKey, HashtagProfile> build_local_profiles(
    const std::map<std::string, TweetBag>& bags, const std::vector<Tweet>& window_tweets);

// One pseudo-document per hashtag pooling every window tweet containing it,
// independent of any article.
std::map<std::string, HashtagProfile> build_global_profiles(
    const std::vector<Tweet>& window_tweets);

std::map<std::string, ArticleProfile> build_article_profiles(
    const std::vector<Article>& window_articles, const TokenizerConfig& config);

// (scope, tag, tweet_count, top-k terms with weights), one profile per line.
void dump_profiles(const std::map<LocalProfileKey, HashtagProfile>& local,
                   const std::map<std::string, HashtagProfile>& global, std::size_t top_k,
                   std::ostream& out);

}  // namespace hashlink

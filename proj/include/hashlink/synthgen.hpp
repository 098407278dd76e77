#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"
#include "hashlink/metrics.hpp"

namespace hashlink {

// Synthetic corpus with planted hashtag relevance. Each topic owns disjoint
// keyword/flavor vocabulary, named entities, and specific (grade-2) hashtags;
// general (grade-1) hashtags are shared by every topic. Noise tweets mix two
// topic keywords with background vocabulary and spam hashtags (grade 0 by
// omission); a share of them floods "hijacked" topics with one recurring spam
// tag so that raw frequency is a misleading ranking signal.
struct SynthConfig {
  int n_articles = 500;
  int n_topics = 20;
  int tweets_per_topic = 2000;  // relevant tweets per topic, across all windows
  int relevant_tags_per_article = 3;  // specific grade-2 tags per topic
  double noise_tweet_fraction = 0.2;  // of the total tweet stream
  int vocab_size = 2000;
  std::uint64_t seed = 1;

  int n_windows = 2;                   // consecutive days
  std::int64_t start_time = 1381104000;  // 2013-10-07T00:00:00Z
  double url_echo_fraction = 0.0;      // articles that also get URL-echo tweets

  int keywords_per_topic = 5;
  int flavor_terms_per_topic = 12;
  int general_tags = 4;
  int spam_tags = 30;
  int background_terms = 150;
  double hijack_topic_fraction = 0.5;

  void validate() const;  // throws ConfigError, including vocabulary feasibility
};

struct SynthOutput {
  std::vector<Article> articles;  // time-sorted
  std::vector<Tweet> tweets;      // time-sorted; tokens not yet normalized
  std::vector<LabeledPair> truth;  // planted grades 2 and 1; absent pairs are 0
};

SynthOutput generate(const SynthConfig& config);

// Writes articles.jsonl, tweets.jsonl and labels.csv (annotator id "synth").
void write_corpus(const SynthOutput& output, const std::string& dir);

}  // namespace hashlink

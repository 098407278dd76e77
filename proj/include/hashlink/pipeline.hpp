#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"
#include "hashlink/matcher.hpp"
#include "hashlink/metrics.hpp"
#include "hashlink/predicates.hpp"
#include "hashlink/profiles.hpp"
#include "hashlink/ranker.hpp"
#include "hashlink/textproc.hpp"

namespace hashlink {

// Knobs shared by every pipeline stage. Paths live in the CLI layer.
struct PipelineConfig {
  int predicate_cap = 400;
  std::int64_t refresh_period = 30 * 60;  // seconds
  double threshold = 0.5;
  int top_k = 3;
  std::size_t max_phrases = 40;
  bool stem_predicates = true;
  TokenizerConfig tokenizer = default_tokenizer_config();
  KeywordOptions keywords;
  TrainConfig trainer;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// Everything derived from one window of the stream.
struct WindowRun {
  StreamWindow window;
  std::vector<Article> articles;  // window articles, keywords filled
  std::vector<Tweet> tweets;      // window tweets, normalized
  PredicatePool pool;             // pool as of the last refresh tick
  std::map<std::string, TweetBag> bags;
  std::map<LocalProfileKey, HashtagProfile> local_profiles;
  std::map<std::string, HashtagProfile> global_profiles;
  std::map<std::string, ArticleProfile> article_profiles;
  std::vector<ScoredPair> pairs;  // features computed, unscored
  std::vector<std::string> notes;  // diagnostics (dropped singletons, guards)
};

// Replays one window: keyword extraction, predicate pooling on the refresh
// tick grid (articles join the pool at the next tick after publication),
// tweet-bag matching, profile construction, and feature computation.
WindowRun run_window(const PipelineConfig& config, const std::vector<Article>& articles,
                     const std::vector<Tweet>& tweets, const StreamWindow& window);

// Grade lookup joined onto candidate pairs. closed_world labels candidates
// missing from `labels` as grade 0 (synthetic corpora enumerate every
// relevant pair); otherwise unlabeled candidates stay unlabeled.
void attach_labels(std::vector<ScoredPair>& pairs, const std::vector<LabeledPair>& labels,
                   bool closed_world);

// Pairs carrying a binary label, for training/evaluation.
std::vector<ScoredPair> labeled_subset(const std::vector<ScoredPair>& pairs);

void score_pairs(std::vector<ScoredPair>& pairs, const LogisticModel& model);

// Scored pairs grouped per article, input order preserved.
std::map<std::string, std::vector<ScoredPair>> by_article(const std::vector<ScoredPair>& pairs);

// Ranked-output rows: article_id,rank,hashtag,score,lfr,lco,gfr,gco.
void write_ranked_csv(const std::map<std::string, std::vector<ScoredPair>>& ranked,
                      const std::string& path, const std::string& config_echo);

// Feature rows at full precision; reader accepts rows with or without labels.
void write_features_csv(const std::vector<ScoredPair>& pairs, const std::string& path,
                        const std::string& config_echo);
std::vector<ScoredPair> read_features_csv(const std::string& path);

}  // namespace hashlink

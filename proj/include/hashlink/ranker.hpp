#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hashlink/matcher.hpp"
#include "hashlink/profiles.hpp"

namespace hashlink {

// The four pair features, each normalized to [0,1].
struct FeatureVector {
  double local_freq = 0.0;
  double local_cosine = 0.0;
  double global_freq = 0.0;
  double global_cosine = 0.0;

  std::array<double, 4> as_array() const {
    return {local_freq, local_cosine, global_freq, global_cosine};
  }
};

// An (article, hashtag) candidate. Graded relevance: 2 specific-relevant,
// 1 general-relevant, 0 irrelevant; grades 1-2 merge to binary relevant.
struct ScoredPair {
  std::string article_id;
  std::string hashtag;
  FeatureVector features;
  std::optional<double> score;   // classifier probability
  std::optional<int> label;      // graded relevance {0,1,2}
  std::optional<bool> relevant;  // binary label
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 2000;
  double l2_lambda = 1e-3;
  std::uint64_t seed = 0;  // reserved for minibatching; full batch is deterministic
};

struct LogisticModel {
  std::array<double, 4> weights{};
  double bias = 0.0;
  TrainConfig hyperparams;
  double final_loss = 0.0;
};

// Cosine similarity of nonnegative weight maps; 0 when either norm is 0.
double cosine(const std::map<std::string, double>& u, const std::map<std::string, double>& v);

struct FeatureDiagnostics {
  std::size_t missing_global_profile = 0;
};

// Features for every (article, hashtag) candidate in the window:
//   local_freq    bag tweet count, min-max normalized over the article's candidates
//   local_cosine  cosine(article profile, local hashtag profile)
//   global_freq   global tweet count, min-max normalized over all window hashtags
//   global_cosine cosine(local hashtag profile, global hashtag profile)
// Min-max over a single candidate (or an all-equal range) is 1.0 by convention.
// Output is sorted by (article_id, hashtag).
std::vector<ScoredPair> compute_features(
    const std::map<std::string, TweetBag>& bags,
    const std::map<LocalProfileKey, HashtagProfile>& local_profiles,
    const std::map<std::string, HashtagProfile>& global_profiles,
    const std::map<std::string, ArticleProfile>& article_profiles,
    FeatureDiagnostics* diag = nullptr);

// Mean logistic loss + (l2_lambda/2)*||w||^2 over labeled pairs.
double logistic_loss(const std::vector<ScoredPair>& labeled, const std::array<double, 4>& weights,
                     double bias, double l2_lambda);

// Analytic gradient of logistic_loss; last component is the bias derivative.
std::array<double, 5> logistic_gradient(const std::vector<ScoredPair>& labeled,
                                        const std::array<double, 4>& weights, double bias,
                                        double l2_lambda);

// Full-batch gradient descent from zero initialization. Requires at least one
// positive and one negative example and finite features.
LogisticModel train_logistic(const std::vector<ScoredPair>& labeled, const TrainConfig& config);

// sigma(w.x + b), clamped away from exactly 0 and 1.
double score_pair(const LogisticModel& model, const FeatureVector& features);

// Relevant iff score is strictly above the threshold.
bool classify(double score, double threshold = 0.5);

// Top-k pairs with score > threshold, descending score; ties broken by higher
// local cosine, then lexicographic hashtag. Pairs must be scored.
std::vector<ScoredPair> rank_hashtags(const std::vector<ScoredPair>& article_pairs, int k = 3,
                                      double threshold = 0.5);

enum class BaselineKey { local_freq, local_cosine };

// Non-learning baseline: top-k by the chosen raw feature, no threshold.
std::vector<ScoredPair> baseline_top_k(const std::vector<ScoredPair>& article_pairs,
                                       BaselineKey key, int k = 3);

// Articles whose ranked set contains the hashtag, by descending score.
std::vector<std::pair<std::string, double>> group_articles_by_hashtag(
    const std::string& hashtag, const std::map<std::string, std::vector<ScoredPair>>& ranked);

// Model file: "logistic v1", 4 weights + bias at full precision, hyperparams.
void save_model(const LogisticModel& model, const std::string& path);
LogisticModel load_model(const std::string& path);

}  // namespace hashlink

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hashlink/metrics.hpp"
#include "hashlink/pipeline.hpp"
#include "hashlink/ranker.hpp"

namespace hashlink {

// Inputs shared by the three experiment designs. Labels are consensus grades;
// closed_world treats candidate pairs absent from the labels as irrelevant
// (the synthetic generator enumerates every relevant pair).
struct ExperimentInputs {
  std::vector<Article> articles;
  std::vector<Tweet> tweets;
  std::vector<LabeledPair> labels;
  StreamWindow train_window;
  StreamWindow test_window;
  bool closed_world = true;
};

struct BaselinePrecision {
  double most_frequent_top_k = 0.0;
  double highest_cosine_top_k = 0.0;
  std::size_t selected_pairs = 0;
};

// Train on the train window's labeled pairs, test on the test window's:
// binary classification metrics plus AUC, against the two non-learning
// baselines' top-k precision.
struct SmallReport {
  LogisticModel model;
  ConfusionCounts counts;
  ConfusionMetrics metrics;
  double auc = 0.0;
  std::size_t train_examples = 0;
  std::size_t test_examples = 0;
  double train_positive_fraction = 0.0;
  double test_positive_fraction = 0.0;
  BaselinePrecision baselines;
};

// Train on labeled pairs, test against URL-derived positives: recall of the
// classifier over user-assigned hashtags (accuracy equals recall: the test
// set has no negatives), plus baseline top-k recall.
struct MediumReport {
  LogisticModel model;
  double recall = 0.0;  // == accuracy on an all-positive test set
  std::size_t url_pairs_total = 0;
  std::size_t url_pairs_in_candidates = 0;
  std::size_t retrieved = 0;
  double baseline_most_frequent_recall = 0.0;
  double baseline_highest_cosine_recall = 0.0;
};

// Train on manual labels plus URL-derived positives, score every pair, emit
// per-article top-k, report precision over judged pairs and per-article
// Precision@1 / NDCG@k with t-based confidence intervals.
struct LargeReport {
  LogisticModel model;
  double precision = 0.0;
  std::size_t judged_pairs = 0;
  MeanCI precision_at_1;
  MeanCI ndcg_at_k;
  std::size_t articles_with_relevant = 0;
  std::map<std::string, std::vector<ScoredPair>> ranked;  // per-article top-k
};

SmallReport run_small(const PipelineConfig& config, const ExperimentInputs& inputs);
MediumReport run_medium(const PipelineConfig& config, const ExperimentInputs& inputs);
LargeReport run_large(const PipelineConfig& config, const ExperimentInputs& inputs);

void print_report(const SmallReport& r, std::ostream& out);
void print_report(const MediumReport& r, std::ostream& out);
void print_report(const LargeReport& r, std::ostream& out);

std::string report_json(const SmallReport& r);
std::string report_json(const MediumReport& r);
std::string report_json(const LargeReport& r);

}  // namespace hashlink

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"

namespace hashlink {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

// Degenerate denominators yield 0.0 with the matching flag set, never a throw.
struct ConfusionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate_accuracy = false;
  bool degenerate_precision = false;
  bool degenerate_recall = false;
  bool degenerate_f1 = false;
};

ConfusionMetrics confusion_metrics(const ConfusionCounts& counts);

// Probability that a random positive outranks a random negative; tied scores
// credit 1/2 per positive-negative pair. Rank-based (average ranks), equal to
// the brute-force pairwise count. Throws ValidationError on single-class input.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// DCG@k = sum_{i=1..k} (2^rel_i - 1) / log2(i+1) over the system-ranked grades.
double dcg_at_k(const std::vector<int>& rels, int k);
// DCG normalized by the ideal (descending) ordering of the same grades;
// 0 by convention when every grade is zero.
double ndcg_at_k(const std::vector<int>& rels, int k);

// Mean over articles of rel_1 / max_grade (max_grade = 2).
double precision_at_1(const std::vector<std::vector<int>>& ranked_grades);

struct AnnotationRecord {
  std::string article_id;
  std::string hashtag;
  std::string annotator_id;
  int grade = 0;  // {0,1,2}
};

struct LabeledPair {
  std::string article_id;
  std::string hashtag;
  int grade = 0;

  bool relevant() const { return grade >= 1; }
};

struct AgreementResult {
  std::vector<LabeledPair> agreed;  // consensus grade = max of the two
  std::size_t total = 0;            // pairs graded by both annotators
  std::size_t agreed_count = 0;
  double rate = 0.0;
};

// Binary agreement (relevant = grade 1 or 2) over the pairs both annotators
// graded. Throws ValidationError when the annotators share no pairs,
// IntegrityError on duplicate grades for one (pair, annotator).
AgreementResult agreement_filter(const std::vector<AnnotationRecord>& a,
                                 const std::vector<AnnotationRecord>& b);

// Positive (article, hashtag) labels from tweets carrying an exact article
// URL: every hashtag of such a tweet is assumed relevant. Deduplicated.
std::vector<LabeledPair> derive_url_ground_truth(const std::vector<Tweet>& tweets,
                                                 const std::vector<Article>& articles);

struct MeanCI {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
};

// Student-t confidence interval for the mean; degenerate for n < 2.
MeanCI t_confidence_interval(const std::vector<double>& values, double level = 0.95);

// Label file rows: article_id,hashtag,annotator_id,grade. The article id may
// contain commas; the last three fields may not.
std::vector<AnnotationRecord> load_annotations(const std::string& path);
void save_annotations(const std::string& path, const std::vector<AnnotationRecord>& records);
void append_annotation(const std::string& path, const AnnotationRecord& record);

}  // namespace hashlink

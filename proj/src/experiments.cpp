#include "hashlink/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "hashlink/errors.hpp"
#include "json.hpp"

namespace hashlink {

namespace {

using nlohmann::json;

struct PreparedWindows {
  WindowRun train;
  WindowRun test;
};

PreparedWindows prepare(const PipelineConfig& config, const ExperimentInputs& inputs) {
  if (inputs.articles.empty()) throw ConfigError("experiment: missing articles");
  if (inputs.tweets.empty()) throw ConfigError("experiment: missing tweets");
  PreparedWindows w{
      run_window(config, inputs.articles, inputs.tweets, inputs.train_window),
      run_window(config, inputs.articles, inputs.tweets, inputs.test_window),
  };
  attach_labels(w.train.pairs, inputs.labels, inputs.closed_world);
  attach_labels(w.test.pairs, inputs.labels, inputs.closed_world);
  return w;
}

double positive_fraction(const std::vector<ScoredPair>& pairs) {
  if (pairs.empty()) return 0.0;
  std::size_t pos = 0;
  for (const ScoredPair& p : pairs) pos += p.relevant.value_or(false) ? 1 : 0;
  return static_cast<double>(pos) / static_cast<double>(pairs.size());
}

// Micro-averaged precision of per-article top-k selections under one feature.
double baseline_precision(const std::map<std::string, std::vector<ScoredPair>>& per_article,
                          BaselineKey key, int k, std::size_t* n_selected = nullptr) {
  std::size_t selected = 0, relevant = 0;
  for (const auto& [article_id, pairs] : per_article) {
    for (const ScoredPair& p : baseline_top_k(pairs, key, k)) {
      if (!p.relevant.has_value()) continue;
      ++selected;
      relevant += *p.relevant ? 1 : 0;
    }
  }
  if (n_selected) *n_selected = selected;
  return selected == 0 ? 0.0 : static_cast<double>(relevant) / static_cast<double>(selected);
}

}  // namespace

SmallReport run_small(const PipelineConfig& config, const ExperimentInputs& inputs) {
  PreparedWindows w = prepare(config, inputs);
  SmallReport report;

  std::vector<ScoredPair> train = labeled_subset(w.train.pairs);
  std::vector<ScoredPair> test = labeled_subset(w.test.pairs);
  if (train.empty()) throw ConfigError("small: no labeled training pairs in train window");
  if (test.empty()) throw ConfigError("small: no labeled test pairs in test window");

  report.model = train_logistic(train, config.trainer);
  report.train_examples = train.size();
  report.test_examples = test.size();
  report.train_positive_fraction = positive_fraction(train);
  report.test_positive_fraction = positive_fraction(test);

  score_pairs(test, report.model);
  std::vector<double> scores;
  std::vector<int> labels;
  for (const ScoredPair& p : test) {
    const bool predicted = classify(*p.score, config.threshold);
    const bool actual = *p.relevant;
    if (predicted && actual) ++report.counts.tp;
    if (predicted && !actual) ++report.counts.fp;
    if (!predicted && actual) ++report.counts.fn;
    if (!predicted && !actual) ++report.counts.tn;
    scores.push_back(*p.score);
    labels.push_back(actual ? 1 : 0);
  }
  report.metrics = confusion_metrics(report.counts);
  report.auc = roc_auc(scores, labels);

  auto per_article = by_article(test);
  report.baselines.most_frequent_top_k =
      baseline_precision(per_article, BaselineKey::local_freq, config.top_k,
                         &report.baselines.selected_pairs);
  report.baselines.highest_cosine_top_k =
      baseline_precision(per_article, BaselineKey::local_cosine, config.top_k);
  return report;
}

MediumReport run_medium(const PipelineConfig& config, const ExperimentInputs& inputs) {
  PreparedWindows w = prepare(config, inputs);
  MediumReport report;

  std::vector<ScoredPair> train = labeled_subset(w.train.pairs);
  if (train.empty()) throw ConfigError("medium: no labeled training pairs in train window");
  report.model = train_logistic(train, config.trainer);

  // User-assigned hashtags from tweets carrying article URLs, assumed relevant.
  std::vector<LabeledPair> url_truth = derive_url_ground_truth(inputs.tweets, inputs.articles);
  report.url_pairs_total = url_truth.size();
  if (url_truth.empty()) throw ConfigError("medium: no URL-derived ground truth in the stream");

  std::set<std::pair<std::string, std::string>> url_pairs;
  for (const LabeledPair& l : url_truth) url_pairs.insert({l.article_id, l.hashtag});

  // Test set: URL pairs that our retrieval produced as candidates.
  std::vector<ScoredPair> test;
  for (const ScoredPair& p : w.test.pairs) {
    if (url_pairs.count({p.article_id, p.hashtag})) test.push_back(p);
  }
  report.url_pairs_in_candidates = test.size();
  if (test.empty()) throw ConfigError("medium: no URL pair intersects the candidate set");

  score_pairs(test, report.model);
  for (const ScoredPair& p : test) {
    report.retrieved += classify(*p.score, config.threshold) ? 1 : 0;
  }
  report.recall = static_cast<double>(report.retrieved) / static_cast<double>(test.size());

  // Baseline recall at top-k: URL pairs recovered by each ranking heuristic.
  auto per_article = by_article(w.test.pairs);
  std::size_t mf_hits = 0, hc_hits = 0;
  for (const ScoredPair& p : test) {
    const auto& pairs = per_article.at(p.article_id);
    for (const ScoredPair& sel : baseline_top_k(pairs, BaselineKey::local_freq, config.top_k)) {
      if (sel.hashtag == p.hashtag) {
        ++mf_hits;
        break;
      }
    }
    for (const ScoredPair& sel : baseline_top_k(pairs, BaselineKey::local_cosine, config.top_k)) {
      if (sel.hashtag == p.hashtag) {
        ++hc_hits;
        break;
      }
    }
  }
  report.baseline_most_frequent_recall =
      static_cast<double>(mf_hits) / static_cast<double>(test.size());
  report.baseline_highest_cosine_recall =
      static_cast<double>(hc_hits) / static_cast<double>(test.size());
  return report;
}

LargeReport run_large(const PipelineConfig& config, const ExperimentInputs& inputs) {
  PreparedWindows w = prepare(config, inputs);
  LargeReport report;

  // Manual labels plus URL-derived positives as training data.
  std::vector<LabeledPair> url_truth = derive_url_ground_truth(inputs.tweets, inputs.articles);
  std::vector<ScoredPair> train = labeled_subset(w.train.pairs);
  {
    std::set<std::pair<std::string, std::string>> url_pairs;
    for (const LabeledPair& l : url_truth) url_pairs.insert({l.article_id, l.hashtag});
    std::set<std::pair<std::string, std::string>> in_train;
    for (const ScoredPair& p : train) in_train.insert({p.article_id, p.hashtag});
    for (const ScoredPair& p : w.train.pairs) {
      if (p.relevant.has_value()) continue;
      if (url_pairs.count({p.article_id, p.hashtag}) &&
          !in_train.count({p.article_id, p.hashtag})) {
        ScoredPair positive = p;
        positive.relevant = true;
        positive.label = 1;
        train.push_back(std::move(positive));
      }
    }
  }
  if (train.empty()) throw ConfigError("large: no labeled training pairs");
  report.model = train_logistic(train, config.trainer);

  // Score every candidate pair from both windows and keep per-article top-k.
  std::vector<ScoredPair> all = w.train.pairs;
  all.insert(all.end(), w.test.pairs.begin(), w.test.pairs.end());
  score_pairs(all, report.model);

  std::size_t judged = 0, judged_relevant = 0;
  std::vector<double> p_at_1;
  std::vector<double> ndcg;
  for (auto& [article_id, pairs] : by_article(all)) {
    std::vector<ScoredPair> top = rank_hashtags(pairs, config.top_k, config.threshold);
    if (top.empty()) continue;
    ++report.articles_with_relevant;
    std::vector<int> grades;
    for (const ScoredPair& p : top) {
      if (p.label.has_value()) {
        ++judged;
        judged_relevant += *p.label >= 1 ? 1 : 0;
      }
      grades.push_back(p.label.value_or(0));
    }
    p_at_1.push_back(static_cast<double>(grades.front()) / 2.0);
    ndcg.push_back(ndcg_at_k(grades, config.top_k));
    report.ranked.emplace(article_id, std::move(top));
  }
  if (judged == 0) throw ConfigError("large: no judged pairs in the ranked output");
  report.precision = static_cast<double>(judged_relevant) / static_cast<double>(judged);
  report.judged_pairs = judged;
  report.precision_at_1 = t_confidence_interval(p_at_1);
  report.ndcg_at_k = t_confidence_interval(ndcg);
  return report;
}

void print_report(const SmallReport& r, std::ostream& out) {
  char buf[512];
  out << "experiment: small (train window -> test window)\n";
  std::snprintf(buf, sizeof buf,
                "train pairs %zu (%.1f%% positive), test pairs %zu (%.1f%% positive)\n",
                r.train_examples, 100.0 * r.train_positive_fraction, r.test_examples,
                100.0 * r.test_positive_fraction);
  out << buf;
  out << "baselines (top-3 precision):\n";
  std::snprintf(buf, sizeof buf, "  most frequent   %.3f\n  highest cosine  %.3f\n",
                r.baselines.most_frequent_top_k, r.baselines.highest_cosine_top_k);
  out << buf;
  out << "classifier (logistic):\n";
  std::snprintf(buf, sizeof buf,
                "  accuracy %.3f  precision %.3f  recall %.3f  f1 %.3f  auc %.3f\n",
                r.metrics.accuracy, r.metrics.precision, r.metrics.recall, r.metrics.f1, r.auc);
  out << buf;
}

void print_report(const MediumReport& r, std::ostream& out) {
  char buf[512];
  out << "experiment: medium (URL-derived ground truth; accuracy equals recall)\n";
  std::snprintf(buf, sizeof buf, "url pairs %zu, in candidate set %zu, retrieved %zu\n",
                r.url_pairs_total, r.url_pairs_in_candidates, r.retrieved);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "baselines (top-3 recall):\n  most frequent   %.3f\n  highest cosine  %.3f\n",
                r.baseline_most_frequent_recall, r.baseline_highest_cosine_recall);
  out << buf;
  std::snprintf(buf, sizeof buf, "classifier recall %.3f\n", r.recall);
  out << buf;
}

void print_report(const LargeReport& r, std::ostream& out) {
  char buf[512];
  out << "experiment: large (top-k ranking over the full stream)\n";
  std::snprintf(buf, sizeof buf, "articles with relevant hashtags: %zu\n",
                r.articles_with_relevant);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "precision (over %zu pairs) | precision@1 (over %zu articles) | ndcg@3 (over "
                "%zu articles)\n",
                r.judged_pairs, r.precision_at_1.n, r.ndcg_at_k.n);
  out << buf;
  std::snprintf(buf, sizeof buf, "%.3f | %.3f [%.3f, %.3f] | %.3f [%.3f, %.3f]\n", r.precision,
                r.precision_at_1.mean, r.precision_at_1.lo, r.precision_at_1.hi,
                r.ndcg_at_k.mean, r.ndcg_at_k.lo, r.ndcg_at_k.hi);
  out << buf;
}

std::string report_json(const SmallReport& r) {
  return json{{"experiment", "small"},
              {"train_examples", r.train_examples},
              {"test_examples", r.test_examples},
              {"train_positive_fraction", r.train_positive_fraction},
              {"test_positive_fraction", r.test_positive_fraction},
              {"accuracy", r.metrics.accuracy},
              {"precision", r.metrics.precision},
              {"recall", r.metrics.recall},
              {"f1", r.metrics.f1},
              {"auc", r.auc},
              {"baseline_most_frequent_top3_precision", r.baselines.most_frequent_top_k},
              {"baseline_highest_cosine_top3_precision", r.baselines.highest_cosine_top_k}}
      .dump(2);
}

std::string report_json(const MediumReport& r) {
  return json{{"experiment", "medium"},
              {"url_pairs_total", r.url_pairs_total},
              {"url_pairs_in_candidates", r.url_pairs_in_candidates},
              {"retrieved", r.retrieved},
              {"recall", r.recall},
              {"accuracy", r.recall},
              {"baseline_most_frequent_top3_recall", r.baseline_most_frequent_recall},
              {"baseline_highest_cosine_top3_recall", r.baseline_highest_cosine_recall}}
      .dump(2);
}

std::string report_json(const LargeReport& r) {
  return json{{"experiment", "large"},
              {"articles_with_relevant", r.articles_with_relevant},
              {"judged_pairs", r.judged_pairs},
              {"precision", r.precision},
              {"precision_at_1",
               {{"mean", r.precision_at_1.mean},
                {"ci_lo", r.precision_at_1.lo},
                {"ci_hi", r.precision_at_1.hi},
                {"n", r.precision_at_1.n}}},
              {"ndcg_at_3",
               {{"mean", r.ndcg_at_k.mean},
                {"ci_lo", r.ndcg_at_k.lo},
                {"ci_hi", r.ndcg_at_k.hi},
                {"n", r.ndcg_at_k.n}}}}
      .dump(2);
}

}  // namespace hashlink

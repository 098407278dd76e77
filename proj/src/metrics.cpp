#include "hashlink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

#include "hashlink/errors.hpp"

namespace hashlink {

ConfusionMetrics confusion_metrics(const ConfusionCounts& c) {
  ConfusionMetrics m;
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
  if (c.total() > 0) {
    m.accuracy = (tp + tn) / (tp + fp + tn + fn);
  } else {
    m.degenerate_accuracy = true;
  }
  if (c.tp + c.fp > 0) {
    m.precision = tp / (tp + fp);
  } else {
    m.degenerate_precision = true;
  }
  if (c.tp + c.fn > 0) {
    m.recall = tp / (tp + fn);
  } else {
    m.degenerate_recall = true;
  }
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.degenerate_f1 = true;
  }
  return m;
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("roc_auc: scores and labels differ in length");
  }
  std::size_t pos = 0, neg = 0;
  for (int y : labels) (y ? pos : neg) += 1;
  if (pos == 0 || neg == 0) {
    throw ValidationError("roc_auc: undefined for single-class input");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups; 1/2 credit per tied positive-negative pair
  // falls out of the averaging.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) pos_rank_sum += avg_rank;
    }
    i = j;
  }
  const double p = static_cast<double>(pos), n = static_cast<double>(neg);
  return (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

double dcg_at_k(const std::vector<int>& rels, int k) {
  if (k < 1) throw ValidationError("dcg_at_k: k must be >= 1");
  double dcg = 0.0;
  const std::size_t top = std::min<std::size_t>(rels.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < top; ++i) {
    dcg += (std::exp2(static_cast<double>(rels[i])) - 1.0) /
           std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(const std::vector<int>& rels, int k) {
  std::vector<int> ideal = rels;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double ideal_dcg = dcg_at_k(ideal, k);
  if (ideal_dcg == 0.0) return 0.0;
  return dcg_at_k(rels, k) / ideal_dcg;
}

double precision_at_1(const std::vector<std::vector<int>>& ranked_grades) {
  if (ranked_grades.empty()) {
    throw ValidationError("precision_at_1: no ranked lists");
  }
  double sum = 0.0;
  for (const auto& grades : ranked_grades) {
    if (grades.empty()) throw ValidationError("precision_at_1: empty ranked list");
    sum += static_cast<double>(grades.front()) / 2.0;
  }
  return sum / static_cast<double>(ranked_grades.size());
}

namespace {

using PairKey = std::pair<std::string, std::string>;

std::map<PairKey, int> grades_by_pair(const std::vector<AnnotationRecord>& records) {
  std::map<PairKey, int> grades;
  for (const AnnotationRecord& r : records) {
    if (r.grade < 0 || r.grade > 2) {
      throw ValidationError("annotation grade out of range for " + r.article_id + " / " +
                            r.hashtag);
    }
    auto [it, inserted] = grades.emplace(PairKey{r.article_id, r.hashtag}, r.grade);
    if (!inserted) {
      throw IntegrityError("duplicate grade for (" + r.article_id + ", " + r.hashtag +
                           ") by annotator " + r.annotator_id);
    }
  }
  return grades;
}

}  // namespace

AgreementResult agreement_filter(const std::vector<AnnotationRecord>& a,
                                 const std::vector<AnnotationRecord>& b) {
  auto ga = grades_by_pair(a);
  auto gb = grades_by_pair(b);
  AgreementResult res;
  for (const auto& [key, grade_a] : ga) {
    auto it = gb.find(key);
    if (it == gb.end()) continue;
    ++res.total;
    const int grade_b = it->second;
    if ((grade_a >= 1) == (grade_b >= 1)) {
      ++res.agreed_count;
      res.agreed.push_back({key.first, key.second, std::max(grade_a, grade_b)});
    }
  }
  if (res.total == 0) {
    throw ValidationError("agreement_filter: annotators share no pairs");
  }
  res.rate = static_cast<double>(res.agreed_count) / static_cast<double>(res.total);
  return res;
}

std::vector<LabeledPair> derive_url_ground_truth(const std::vector<Tweet>& tweets,
                                                 const std::vector<Article>& articles) {
  std::unordered_set<std::string> article_ids;
  for (const Article& a : articles) article_ids.insert(a.id);
  std::set<PairKey> seen;
  std::vector<LabeledPair> out;
  for (const Tweet& t : tweets) {
    if (t.hashtags.empty()) continue;
    for (const std::string& url : t.urls) {
      if (!article_ids.count(url)) continue;
      for (const std::string& tag : t.hashtags) {
        if (seen.insert({url, tag}).second) out.push_back({url, tag, 1});
      }
    }
  }
  return out;
}

MeanCI t_confidence_interval(const std::vector<double>& values, double level) {
  MeanCI ci;
  ci.n = values.size();
  if (values.empty()) return ci;
  const double n = static_cast<double>(values.size());
  ci.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) {
    ci.lo = ci.hi = ci.mean;
    return ci;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - ci.mean) * (v - ci.mean);
  const double stderr_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  ci.lo = ci.mean - t * stderr_mean;
  ci.hi = ci.mean + t * stderr_mean;
  return ci;
}

std::vector<AnnotationRecord> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open label file: " + path);
  std::vector<AnnotationRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    // Parse from the right: the article id may contain commas.
    auto c3 = line.rfind(',');
    auto c2 = c3 == std::string::npos ? std::string::npos : line.rfind(',', c3 - 1);
    auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : line.rfind(',', c2 - 1);
    if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos) {
      throw ParseError("bad label row at " + path + ":" + std::to_string(lineno));
    }
    AnnotationRecord r;
    r.article_id = line.substr(0, c1);
    r.hashtag = line.substr(c1 + 1, c2 - c1 - 1);
    r.annotator_id = line.substr(c2 + 1, c3 - c2 - 1);
    try {
      r.grade = std::stoi(line.substr(c3 + 1));
    } catch (const std::exception&) {
      throw ParseError("bad grade at " + path + ":" + std::to_string(lineno));
    }
    if (r.article_id.empty() || r.hashtag.empty() || r.grade < 0 || r.grade > 2) {
      throw ParseError("bad label row at " + path + ":" + std::to_string(lineno));
    }
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

void write_annotation(std::ostream& out, const AnnotationRecord& r) {
  if (r.hashtag.find(',') != std::string::npos ||
      r.annotator_id.find(',') != std::string::npos) {
    throw IntegrityError("label fields may not contain commas: " + r.hashtag + " / " +
                         r.annotator_id);
  }
  out << r.article_id << ',' << r.hashtag << ',' << r.annotator_id << ',' << r.grade << '\n';
}

}  // namespace

void save_annotations(const std::string& path, const std::vector<AnnotationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write label file: " + path);
  for (const AnnotationRecord& r : records) write_annotation(out, r);
}

void append_annotation(const std::string& path, const AnnotationRecord& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError("cannot append to label file: " + path);
  write_annotation(out, record);
}

}  // namespace hashlink

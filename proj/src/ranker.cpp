#include "hashlink/ranker.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hashlink/errors.hpp"

namespace hashlink {

double cosine(const std::map<std::string, double>& u, const std::map<std::string, double>& v) {
  double dot = 0.0;
  const auto& small = u.size() <= v.size() ? u : v;
  const auto& large = u.size() <= v.size() ? v : u;
  for (const auto& [term, w] : small) {
    auto it = large.find(term);
    if (it != large.end()) dot += w * it->second;
  }
  double nu = 0.0, nv = 0.0;
  for (const auto& [term, w] : u) nu += w * w;
  for (const auto& [term, w] : v) nv += w * w;
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

namespace {

double min_max(double value, double lo, double hi) {
  if (hi <= lo) return 1.0;  // single candidate or degenerate range
  return (value - lo) / (hi - lo);
}

const std::map<std::string, double> kEmptyWeights;

}  // namespace

std::vector<ScoredPair> compute_features(
    const std::map<std::string, TweetBag>& bags,
    const std::map<LocalProfileKey, HashtagProfile>& local_profiles,
    const std::map<std::string, HashtagProfile>& global_profiles,
    const std::map<std::string, ArticleProfile>& article_profiles,
    FeatureDiagnostics* diag) {
  double global_min = 0.0, global_max = 0.0;
  bool first = true;
  for (const auto& [tag, p] : global_profiles) {
    double c = static_cast<double>(p.tweet_count);
    if (first) {
      global_min = global_max = c;
      first = false;
    } else {
      global_min = std::min(global_min, c);
      global_max = std::max(global_max, c);
    }
  }

  std::vector<ScoredPair> pairs;
  for (const auto& [article_id, bag] : bags) {
    if (bag.hashtag_counts.empty()) continue;
    double local_min = 0.0, local_max = 0.0;
    bool lfirst = true;
    for (const auto& [tag, count] : bag.hashtag_counts) {
      double c = static_cast<double>(count);
      if (lfirst) {
        local_min = local_max = c;
        lfirst = false;
      } else {
        local_min = std::min(local_min, c);
        local_max = std::max(local_max, c);
      }
    }
    auto ap = article_profiles.find(article_id);
    const std::map<std::string, double>& article_weights =
        ap != article_profiles.end() ? ap->second.term_weights : kEmptyWeights;

    for (const auto& [tag, count] : bag.hashtag_counts) {
      ScoredPair sp;
      sp.article_id = article_id;
      sp.hashtag = tag;
      sp.features.local_freq = min_max(static_cast<double>(count), local_min, local_max);

      auto lp = local_profiles.find({article_id, tag});
      const std::map<std::string, double>& local_weights =
          lp != local_profiles.end() ? lp->second.term_weights : kEmptyWeights;
      sp.features.local_cosine = cosine(article_weights, local_weights);

      auto gp = global_profiles.find(tag);
      if (gp == global_profiles.end()) {
        // Cannot happen when global profiles cover the window stream; guard anyway.
        sp.features.global_freq = 0.0;
        sp.features.global_cosine = 0.0;
        if (diag) ++diag->missing_global_profile;
      } else {
        sp.features.global_freq =
            min_max(static_cast<double>(gp->second.tweet_count), global_min, global_max);
        sp.features.global_cosine = cosine(local_weights, gp->second.term_weights);
      }
      pairs.push_back(std::move(sp));
    }
  }
  return pairs;  // bags and hashtag_counts are ordered maps: sorted already
}

namespace {

double sigmoid(double z) {
  double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(p, 1e-15, 1.0 - 1e-15);
}

// log(1 + e^z), overflow-safe
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

void validate_labeled(const std::vector<ScoredPair>& labeled) {
  if (labeled.empty()) throw ValidationError("train: empty training set");
  std::size_t pos = 0, neg = 0;
  for (const ScoredPair& p : labeled) {
    if (!p.relevant.has_value()) {
      throw ValidationError("train: unlabeled pair " + p.article_id + " / " + p.hashtag);
    }
    for (double x : p.features.as_array()) {
      if (!std::isfinite(x)) {
        throw ValidationError("train: non-finite feature for " + p.article_id + " / " +
                              p.hashtag);
      }
    }
    (*p.relevant ? pos : neg) += 1;
  }
  if (pos == 0 || neg == 0) {
    throw ValidationError("train: need at least one positive and one negative example");
  }
}

}  // namespace

double logistic_loss(const std::vector<ScoredPair>& labeled, const std::array<double, 4>& weights,
                     double bias, double l2_lambda) {
  double sum = 0.0;
  for (const ScoredPair& p : labeled) {
    const auto x = p.features.as_array();
    double z = bias;
    for (std::size_t i = 0; i < 4; ++i) z += weights[i] * x[i];
    double y = *p.relevant ? 1.0 : 0.0;
    sum += softplus(z) - y * z;  // == -[y ln p + (1-y) ln(1-p)]
  }
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return sum / static_cast<double>(labeled.size()) + 0.5 * l2_lambda * reg;
}

std::array<double, 5> logistic_gradient(const std::vector<ScoredPair>& labeled,
                                        const std::array<double, 4>& weights, double bias,
                                        double l2_lambda) {
  std::array<double, 5> grad{};
  for (const ScoredPair& p : labeled) {
    const auto x = p.features.as_array();
    double z = bias;
    for (std::size_t i = 0; i < 4; ++i) z += weights[i] * x[i];
    double err = sigmoid(z) - (*p.relevant ? 1.0 : 0.0);
    for (std::size_t i = 0; i < 4; ++i) grad[i] += err * x[i];
    grad[4] += err;
  }
  const double n = static_cast<double>(labeled.size());
  for (double& g : grad) g /= n;
  for (std::size_t i = 0; i < 4; ++i) grad[i] += l2_lambda * weights[i];
  return grad;
}

LogisticModel train_logistic(const std::vector<ScoredPair>& labeled, const TrainConfig& config) {
  validate_labeled(labeled);
  if (config.epochs < 0 || config.learning_rate <= 0.0 || config.l2_lambda < 0.0) {
    throw ConfigError("train: bad hyperparameters");
  }
  LogisticModel model;
  model.hyperparams = config;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    auto grad = logistic_gradient(labeled, model.weights, model.bias, config.l2_lambda);
    for (std::size_t i = 0; i < 4; ++i) model.weights[i] -= config.learning_rate * grad[i];
    model.bias -= config.learning_rate * grad[4];
  }
  model.final_loss = logistic_loss(labeled, model.weights, model.bias, config.l2_lambda);
  return model;
}

double score_pair(const LogisticModel& model, const FeatureVector& features) {
  const auto x = features.as_array();
  double z = model.bias;
  for (std::size_t i = 0; i < 4; ++i) z += model.weights[i] * x[i];
  return sigmoid(z);
}

bool classify(double score, double threshold) { return score > threshold; }

namespace {

void require_scored(const std::vector<ScoredPair>& pairs) {
  for (const ScoredPair& p : pairs) {
    if (!p.score.has_value()) {
      throw ValidationError("rank: unscored pair " + p.article_id + " / " + p.hashtag);
    }
  }
}

bool ranked_before(const ScoredPair& a, const ScoredPair& b, double ka, double kb) {
  if (ka != kb) return ka > kb;
  if (a.features.local_cosine != b.features.local_cosine) {
    return a.features.local_cosine > b.features.local_cosine;
  }
  return a.hashtag < b.hashtag;
}

}  // namespace

std::vector<ScoredPair> rank_hashtags(const std::vector<ScoredPair>& article_pairs, int k,
                                      double threshold) {
  require_scored(article_pairs);
  std::vector<ScoredPair> kept;
  for (const ScoredPair& p : article_pairs) {
    if (classify(*p.score, threshold)) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const ScoredPair& a, const ScoredPair& b) {
    return ranked_before(a, b, *a.score, *b.score);
  });
  if (k >= 0 && kept.size() > static_cast<std::size_t>(k)) kept.resize(static_cast<std::size_t>(k));
  return kept;
}

std::vector<ScoredPair> baseline_top_k(const std::vector<ScoredPair>& article_pairs,
                                       BaselineKey key, int k) {
  auto key_of = [key](const ScoredPair& p) {
    return key == BaselineKey::local_freq ? p.features.local_freq : p.features.local_cosine;
  };
  std::vector<ScoredPair> sorted = article_pairs;
  std::sort(sorted.begin(), sorted.end(), [&](const ScoredPair& a, const ScoredPair& b) {
    return ranked_before(a, b, key_of(a), key_of(b));
  });
  if (k >= 0 && sorted.size() > static_cast<std::size_t>(k)) {
    sorted.resize(static_cast<std::size_t>(k));
  }
  return sorted;
}

std::vector<std::pair<std::string, double>> group_articles_by_hashtag(
    const std::string& hashtag, const std::map<std::string, std::vector<ScoredPair>>& ranked) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [article_id, pairs] : ranked) {
    for (const ScoredPair& p : pairs) {
      if (p.hashtag == hashtag && p.score.has_value()) {
        out.emplace_back(article_id, *p.score);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

void save_model(const LogisticModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model file: " + path);
  char buf[512];
  std::snprintf(buf, sizeof buf, "logistic v1\n%.17g %.17g %.17g %.17g %.17g\n",
                model.weights[0], model.weights[1], model.weights[2], model.weights[3],
                model.bias);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "learning_rate %.17g\nepochs %d\nl2_lambda %.17g\nseed %llu\nfinal_loss %.17g\n",
                model.hyperparams.learning_rate, model.hyperparams.epochs,
                model.hyperparams.l2_lambda,
                static_cast<unsigned long long>(model.hyperparams.seed), model.final_loss);
  out << buf;
}

LogisticModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  std::string header;
  std::getline(in, header);
  if (header != "logistic v1") {
    throw ParseError("unsupported model format in " + path + ": '" + header + "'");
  }
  LogisticModel model;
  if (!(in >> model.weights[0] >> model.weights[1] >> model.weights[2] >> model.weights[3] >>
        model.bias)) {
    throw ParseError("truncated model file: " + path);
  }
  std::string field;
  while (in >> field) {
    if (field == "learning_rate") {
      in >> model.hyperparams.learning_rate;
    } else if (field == "epochs") {
      in >> model.hyperparams.epochs;
    } else if (field == "l2_lambda") {
      in >> model.hyperparams.l2_lambda;
    } else if (field == "seed") {
      in >> model.hyperparams.seed;
    } else if (field == "final_loss") {
      in >> model.final_loss;
    } else {
      throw ParseError("unknown model field '" + field + "' in " + path);
    }
    if (!in) throw ParseError("truncated model file: " + path);
  }
  return model;
}

}  // namespace hashlink

#include "hashlink/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hashlink {

double tfidf_weight(std::int64_t tf, std::int64_t df, std::int64_t n_docs) {
  return static_cast<double>(tf) *
         (std::log((static_cast<double>(n_docs) + 1.0) / (static_cast<double>(df) + 1.0)) + 1.0);
}

namespace {

using TermCounts = std::map<std::string, std::int64_t>;

// Turns raw per-document term counts into tf.idf weight maps, sharing one
// document-frequency table across the collection.
template <typename Key>
std::map<Key, std::map<std::string, double>> weigh_collection(
    const std::map<Key, TermCounts>& docs) {
  std::map<std::string, std::int64_t> df;
  for (const auto& [key, counts] : docs) {
    for (const auto& [term, n] : counts) ++df[term];
  }
  const std::int64_t n_docs = static_cast<std::int64_t>(docs.size());
  std::map<Key, std::map<std::string, double>> out;
  for (const auto& [key, counts] : docs) {
    auto& weights = out[key];
    for (const auto& [term, n] : counts) {
      weights[term] = tfidf_weight(n, df[term], n_docs);
    }
  }
  return out;
}

}  // namespace

std::map<LocalProfileKey, HashtagProfile> build_local_profiles(
    const std::map<std::string, TweetBag>& bags, const std::vector<Tweet>& window_tweets) {
  // Pseudo-document per (article, tag): concatenated tokens of the bag tweets
  // containing the tag.
  std::map<LocalProfileKey, TermCounts> docs;
  for (const auto& [article_id, bag] : bags) {
    for (std::uint32_t idx : bag.tweet_indices) {
      const Tweet& t = window_tweets[idx];
      std::vector<std::string> tags = t.hashtags;
      std::sort(tags.begin(), tags.end());
      tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
      for (const std::string& tag : tags) {
        TermCounts& counts = docs[{article_id, tag}];
        for (const std::string& term : t.tokens) ++counts[term];
      }
    }
  }
  auto weights = weigh_collection(docs);

  std::map<LocalProfileKey, HashtagProfile> profiles;
  for (auto& [key, w] : weights) {
    HashtagProfile p;
    p.scope = ProfileScope::local;
    p.article_id = key.first;
    p.tag = key.second;
    p.term_weights = std::move(w);
    p.tweet_count = bags.at(key.first).hashtag_counts.at(key.second);
    profiles.emplace(key, std::move(p));
  }
  return profiles;
}

std::map<std::string, HashtagProfile> build_global_profiles(
    const std::vector<Tweet>& window_tweets) {
  std::map<std::string, TermCounts> docs;
  std::map<std::string, std::int64_t> tweet_counts;
  for (const Tweet& t : window_tweets) {
    std::vector<std::string> tags = t.hashtags;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (const std::string& tag : tags) {
      ++tweet_counts[tag];
      TermCounts& counts = docs[tag];
      for (const std::string& term : t.tokens) ++counts[term];
    }
  }
  auto weights = weigh_collection(docs);

  std::map<std::string, HashtagProfile> profiles;
  for (auto& [tag, w] : weights) {
    HashtagProfile p;
    p.scope = ProfileScope::global;
    p.tag = tag;
    p.term_weights = std::move(w);
    p.tweet_count = tweet_counts[tag];
    profiles.emplace(tag, std::move(p));
  }
  return profiles;
}

std::map<std::string, ArticleProfile> build_article_profiles(
    const std::vector<Article>& window_articles, const TokenizerConfig& config) {
  // Candidate terms come from headline + subheadline; tf is counted over the
  // full article text, df over the window's articles (full text).
  struct Doc {
    std::set<std::string> support;
    TermCounts full_counts;
  };
  std::map<std::string, Doc> docs;
  std::map<std::string, std::int64_t> df;
  for (const Article& a : window_articles) {
    Doc d;
    for (const std::string& t :
         normalize_text(a.headline + " \n " + a.subheadline, config, false)) {
      d.support.insert(t);
    }
    for (const std::string& t : normalize_text(
             a.headline + " \n " + a.subheadline + " \n " + a.body, config, false)) {
      ++d.full_counts[t];
    }
    for (const auto& [term, n] : d.full_counts) ++df[term];
    docs.emplace(a.id, std::move(d));
  }
  const std::int64_t n_docs = static_cast<std::int64_t>(docs.size());

  std::map<std::string, ArticleProfile> profiles;
  for (auto& [id, d] : docs) {
    ArticleProfile p;
    p.article_id = id;
    for (const std::string& term : d.support) {
      auto it = d.full_counts.find(term);
      if (it == d.full_counts.end()) continue;
      p.term_weights[term] = tfidf_weight(it->second, df[term], n_docs);
    }
    profiles.emplace(id, std::move(p));
  }
  return profiles;
}

void dump_profiles(const std::map<LocalProfileKey, HashtagProfile>& local,
                   const std::map<std::string, HashtagProfile>& global, std::size_t top_k,
                   std::ostream& out) {
  auto write = [&](const HashtagProfile& p) {
    out << (p.scope == ProfileScope::local ? "local" : "global");
    if (p.scope == ProfileScope::local) out << '(' << p.article_id << ')';
    out << '\t' << p.tag << '\t' << p.tweet_count << '\t';
    std::vector<std::pair<std::string, double>> terms(p.term_weights.begin(),
                                                      p.term_weights.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (terms.size() > top_k) terms.resize(top_k);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) out << ' ';
      out << terms[i].first << ':' << terms[i].second;
    }
    out << '\n';
  };
  for (const auto& [key, p] : local) write(p);
  for (const auto& [tag, p] : global) write(p);
}

}  // namespace hashlink

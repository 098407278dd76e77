#include "hashlink/matcher.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

namespace hashlink {

namespace {

bool contains_contiguous(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < phrase.size(); ++j) {
      if (tokens[i + j] != phrase[j]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

}  // namespace

PredicateIndex::PredicateIndex(const PredicatePool& pool, const TokenizerConfig& config,
                               bool stem_terms) {
  entries_.reserve(pool.predicates.size());
  for (const FilterPredicate& p : pool.predicates) {
    Entry e;
    e.kind = p.kind;
    e.key = p.key();
    for (const std::string& t : p.terms) {
      e.match_terms.push_back(stem_terms ? stem_term(t, config) : t);
    }
    e.source_articles.assign(p.source_articles.begin(), p.source_articles.end());
    std::size_t id = entries_.size();
    if (e.kind == PredicateKind::pair) {
      by_term_[e.match_terms[0]].push_back(id);
      if (e.match_terms[1] != e.match_terms[0]) by_term_[e.match_terms[1]].push_back(id);
    } else {
      by_term_[e.match_terms.front()].push_back(id);
    }
    entries_.push_back(std::move(e));
  }
}

std::vector<std::size_t> PredicateIndex::matching_predicates(const Tweet& tweet) const {
  if (tweet.tokens.empty() || entries_.empty()) return {};
  std::unordered_set<std::string> token_set(tweet.tokens.begin(), tweet.tokens.end());
  std::vector<std::size_t> fired;
  std::unordered_set<std::size_t> considered;
  for (const std::string& tok : token_set) {
    auto it = by_term_.find(tok);
    if (it == by_term_.end()) continue;
    for (std::size_t id : it->second) {
      if (!considered.insert(id).second) continue;
      const Entry& e = entries_[id];
      bool hit;
      if (e.kind == PredicateKind::pair) {
        hit = token_set.count(e.match_terms[0]) && token_set.count(e.match_terms[1]);
      } else {
        hit = contains_contiguous(tweet.tokens, e.match_terms);
      }
      if (hit) fired.push_back(id);
    }
  }
  std::sort(fired.begin(), fired.end());
  return fired;
}

std::vector<std::string> PredicateIndex::match(const Tweet& tweet) const {
  std::vector<std::string> articles;
  for (std::size_t id : matching_predicates(tweet)) {
    const Entry& e = entries_[id];
    articles.insert(articles.end(), e.source_articles.begin(), e.source_articles.end());
  }
  std::sort(articles.begin(), articles.end());
  articles.erase(std::unique(articles.begin(), articles.end()), articles.end());
  return articles;
}

std::map<std::string, TweetBag> build_bags(const PredicateIndex& index,
                                           const std::vector<Tweet>& tweets) {
  std::map<std::string, TweetBag> bags;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const Tweet& t = tweets[i];
    std::vector<std::string> articles = index.match(t);
    if (articles.empty()) continue;
    // Distinct hashtags: counts are "bag tweets containing the tag".
    std::vector<std::string> tags = t.hashtags;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (const std::string& a : articles) {
      TweetBag& bag = bags[a];
      bag.article_id = a;
      bag.tweet_indices.push_back(static_cast<std::uint32_t>(i));
      for (const std::string& tag : tags) ++bag.hashtag_counts[tag];
    }
  }
  return bags;
}

void dump_bags(const PredicateIndex& index, const std::vector<Tweet>& tweets, std::ostream& out) {
  for (const Tweet& t : tweets) {
    for (std::size_t id : index.matching_predicates(t)) {
      const PredicateIndex::Entry& e = index.entries()[id];
      for (const std::string& a : e.source_articles) {
        out << a << '\t' << t.id << '\t' << e.key << '\n';
      }
    }
  }
}

}  // namespace hashlink

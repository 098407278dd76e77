#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hashlink/corpus.hpp"
#include "hashlink/predicates.hpp"
#include "hashlink/textproc.hpp"

namespace hashlink {

// Tweets assigned to one article within a window. Indices refer to the window
// tweet vector the bags were built from.
struct TweetBag {
  std::string article_id;
  std::vector<std::uint32_t> tweet_indices;  // arrival order
  std::map<std::string, std::int64_t> hashtag_counts;  // tag -> bag tweets containing it
};

// Inverted term index over a predicate pool. Predicate terms are stemmed at
// index build time so they live in the same token space as normalized tweets
// (surface matching available via stem_terms=false). Phrase predicates are
// indexed under their first term and verified contiguously at match time.
class PredicateIndex {
 public:
  struct Entry {
    PredicateKind kind;
    std::vector<std::string> match_terms;
    std::vector<std::string> source_articles;  // sorted
    std::string key;                           // original predicate key, for dumps
  };

  PredicateIndex(const PredicatePool& pool, const TokenizerConfig& config,
                 bool stem_terms = true);

  // Ids of predicates firing on a normalized tweet, ascending.
  std::vector<std::size_t> matching_predicates(const Tweet& tweet) const;
  // Union of source articles over firing predicates, sorted, deduplicated.
  std::vector<std::string> match(const Tweet& tweet) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_term_;
};

// One pass over normalized window tweets, accumulating per-article bags.
std::map<std::string, TweetBag> build_bags(const PredicateIndex& index,
                                           const std::vector<Tweet>& tweets);

// One line per (article_id, tweet_id, fired predicate key).
void dump_bags(const PredicateIndex& index, const std::vector<Tweet>& tweets, std::ostream& out);

}  // namespace hashlink

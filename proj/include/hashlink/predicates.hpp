#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"

namespace hashlink {

enum class PredicateKind { phrase, pair };

// Conjunctive match unit: a frozen phrase matched contiguously, or an
// unordered pair of single keywords that must both be present.
struct FilterPredicate {
  PredicateKind kind = PredicateKind::pair;
  std::vector<std::string> terms;  // pair: exactly two, lexicographic order
  std::set<std::string> source_articles;

  // Canonical identity, also the pool dump line: "P:<phrase>" / "2:<t1> <t2>".
  std::string key() const;
};

// Frozen phrases map to phrase predicates; the n non-frozen single terms
// expand into all C(n,2) unordered pairs. A lone single term forms no
// predicate and is reported through dropped_singletons.
std::vector<FilterPredicate> build_predicates(const std::vector<KeywordPhrase>& keywords,
                                              const std::string& article_id,
                                              std::vector<std::string>* dropped_singletons = nullptr);

struct PredicatePool {
  std::vector<FilterPredicate> predicates;
  int cap = 400;
  std::int64_t refresh_period = 30 * 60;  // seconds
  std::int64_t last_refresh = 0;

  std::size_t size() const { return predicates.size(); }
};

// Deduplicates (merging source articles) and truncates to the cap in priority
// order: phrase predicates by descending source count, then pair predicates by
// descending summed corpus frequency of their terms; ties lexicographic.
PredicatePool pool_predicates(const std::vector<std::vector<FilterPredicate>>& per_article,
                              int cap);

// Rebuilds the pool from every article seen so far once a refresh period has
// elapsed; otherwise returns the pool unchanged. Articles must carry keywords.
PredicatePool refresh(const PredicatePool& pool, const std::vector<Article>& articles_seen,
                      std::int64_t clock);

void dump_pool(const PredicatePool& pool, std::ostream& out);

}  // namespace hashlink

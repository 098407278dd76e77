#include "hashlink/predicates.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "hashlink/errors.hpp"

namespace hashlink {

std::string FilterPredicate::key() const {
  std::string k = kind == PredicateKind::phrase ? "P:" : "2:";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) k.push_back(' ');
    k += terms[i];
  }
  return k;
}

std::vector<FilterPredicate> build_predicates(const std::vector<KeywordPhrase>& keywords,
                                              const std::string& article_id,
                                              std::vector<std::string>* dropped_singletons) {
  if (keywords.empty()) throw ValidationError("build_predicates: empty keyword list");

  std::vector<FilterPredicate> out;
  std::vector<std::string> singles;
  for (const KeywordPhrase& kw : keywords) {
    if (kw.terms.empty()) throw ValidationError("build_predicates: empty keyword phrase");
    if (kw.frozen) {
      FilterPredicate p;
      p.kind = PredicateKind::phrase;
      p.terms = kw.terms;
      p.source_articles = {article_id};
      out.push_back(std::move(p));
    } else {
      singles.push_back(kw.terms[0]);
    }
  }
  std::sort(singles.begin(), singles.end());
  singles.erase(std::unique(singles.begin(), singles.end()), singles.end());

  if (singles.size() == 1 && dropped_singletons) {
    dropped_singletons->push_back(article_id + ": " + singles[0]);
  }
  for (std::size_t i = 0; i < singles.size(); ++i) {
    for (std::size_t j = i + 1; j < singles.size(); ++j) {
      FilterPredicate p;
      p.kind = PredicateKind::pair;
      p.terms = {singles[i], singles[j]};  // already lexicographic
      p.source_articles = {article_id};
      out.push_back(std::move(p));
    }
  }
  return out;
}

PredicatePool pool_predicates(const std::vector<std::vector<FilterPredicate>>& per_article,
                              int cap) {
  if (cap < 1) throw ValidationError("pool_predicates: cap must be >= 1");

  // Dedup by canonical key, merging source articles.
  std::map<std::string, FilterPredicate> merged;
  for (const auto& list : per_article) {
    for (const FilterPredicate& p : list) {
      auto [it, inserted] = merged.try_emplace(p.key(), p);
      if (!inserted) {
        it->second.source_articles.insert(p.source_articles.begin(), p.source_articles.end());
      }
    }
  }

  // Corpus frequency of a pair term: number of distinct articles whose pair
  // predicates mention it.
  std::map<std::string, std::set<std::string>> term_articles;
  for (const auto& [key, p] : merged) {
    if (p.kind != PredicateKind::pair) continue;
    for (const std::string& t : p.terms) {
      term_articles[t].insert(p.source_articles.begin(), p.source_articles.end());
    }
  }

  std::vector<FilterPredicate> all;
  all.reserve(merged.size());
  for (auto& [key, p] : merged) all.push_back(std::move(p));

  auto pair_weight = [&](const FilterPredicate& p) {
    return term_articles[p.terms[0]].size() + term_articles[p.terms[1]].size();
  };
  std::sort(all.begin(), all.end(), [&](const FilterPredicate& a, const FilterPredicate& b) {
    if (a.kind != b.kind) return a.kind == PredicateKind::phrase;
    if (a.kind == PredicateKind::phrase) {
      if (a.source_articles.size() != b.source_articles.size()) {
        return a.source_articles.size() > b.source_articles.size();
      }
    } else {
      std::size_t wa = pair_weight(a), wb = pair_weight(b);
      if (wa != wb) return wa > wb;
    }
    return a.terms < b.terms;
  });

  PredicatePool pool;
  pool.cap = cap;
  if (all.size() > static_cast<std::size_t>(cap)) all.resize(static_cast<std::size_t>(cap));
  pool.predicates = std::move(all);
  return pool;
}

PredicatePool refresh(const PredicatePool& pool, const std::vector<Article>& articles_seen,
                      std::int64_t clock) {
  if (clock - pool.last_refresh < pool.refresh_period) return pool;
  std::vector<std::vector<FilterPredicate>> per_article;
  per_article.reserve(articles_seen.size());
  for (const Article& a : articles_seen) {
    if (a.keywords.empty()) continue;  // nothing extractable; no predicates
    per_article.push_back(build_predicates(a.keywords, a.id));
  }
  PredicatePool next = pool_predicates(per_article, pool.cap);
  next.refresh_period = pool.refresh_period;
  next.last_refresh = clock;
  return next;
}

void dump_pool(const PredicatePool& pool, std::ostream& out) {
  for (const FilterPredicate& p : pool.predicates) out << p.key() << '\n';
}

}  // namespace hashlink

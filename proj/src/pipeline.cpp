#include "hashlink/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "hashlink/errors.hpp"

namespace hashlink {

void PipelineConfig::validate() const {
  if (predicate_cap < 1) throw ConfigError("config: predicate cap must be >= 1");
  if (threshold <= 0.0 || threshold >= 1.0) throw ConfigError("config: threshold must lie in (0,1)");
  if (top_k < 1) throw ConfigError("config: top_k must be >= 1");
  if (refresh_period < 1) throw ConfigError("config: refresh period must be positive");
  if (max_phrases < 1) throw ConfigError("config: max_phrases must be >= 1");
  tokenizer.validate();
}

WindowRun run_window(const PipelineConfig& config, const std::vector<Article>& all_articles,
                     const std::vector<Tweet>& all_tweets, const StreamWindow& window) {
  config.validate();
  if (window.start >= window.end) throw ConfigError("config: window start must precede end");

  WindowRun run;
  run.window = window;
  auto [articles, tweets] = replay(all_articles, all_tweets, window);
  run.articles = std::move(articles);
  run.tweets = std::move(tweets);
  std::stable_sort(run.articles.begin(), run.articles.end(),
                   [](const Article& a, const Article& b) { return a.published_at < b.published_at; });
  std::stable_sort(run.tweets.begin(), run.tweets.end(),
                   [](const Tweet& a, const Tweet& b) { return a.created_at < b.created_at; });

  for (Article& a : run.articles) {
    a.keywords = extract_keywords(a.headline, a.subheadline, config.max_phrases,
                                  config.tokenizer, config.keywords);
    std::size_t singles = 0;
    const std::string* lone = nullptr;
    for (const KeywordPhrase& kw : a.keywords) {
      if (!kw.frozen) {
        ++singles;
        lone = &kw.terms[0];
      }
    }
    if (singles == 1) {
      run.notes.push_back("dropped lone keyword: " + a.id + ": " + *lone);
    }
  }
  for (Tweet& t : run.tweets) {
    t.tokens = normalize_tweet(t.raw_text, config.tokenizer);
  }

  // Predicate refresh ticks: the pool known at time x covers articles
  // published at or before the latest tick <= x. Articles published between
  // ticks join at the next tick.
  std::map<std::string, TweetBag> bags;
  PredicatePool pool;
  pool.cap = config.predicate_cap;
  pool.refresh_period = config.refresh_period;
  pool.last_refresh = window.start - config.refresh_period;  // force a build at the first tick

  std::vector<Article> seen;
  std::size_t next_article = 0;
  std::int64_t tick = window.start;
  auto advance_pool_to = [&](std::int64_t now) {
    while (tick <= now) {
      bool grew = false;
      while (next_article < run.articles.size() &&
             run.articles[next_article].published_at <= tick) {
        seen.push_back(run.articles[next_article]);
        ++next_article;
        grew = true;
      }
      if (grew || pool.last_refresh < window.start) {
        std::vector<std::vector<FilterPredicate>> per_article;
        per_article.reserve(seen.size());
        for (const Article& a : seen) {
          if (a.keywords.empty()) continue;
          per_article.push_back(build_predicates(a.keywords, a.id));
        }
        pool = pool_predicates(per_article, config.predicate_cap);
        pool.refresh_period = config.refresh_period;
      }
      pool.last_refresh = tick;
      tick += config.refresh_period;
    }
  };

  advance_pool_to(window.start);
  PredicateIndex index(pool, config.tokenizer, config.stem_predicates);
  std::int64_t indexed_at = pool.last_refresh;
  for (std::size_t i = 0; i < run.tweets.size(); ++i) {
    const Tweet& t = run.tweets[i];
    if (t.created_at >= tick) {
      advance_pool_to(t.created_at);
      if (pool.last_refresh != indexed_at) {
        index = PredicateIndex(pool, config.tokenizer, config.stem_predicates);
        indexed_at = pool.last_refresh;
      }
    }
    std::vector<std::string> matched = index.match(t);
    if (matched.empty()) continue;
    std::vector<std::string> tags = t.hashtags;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (const std::string& a : matched) {
      TweetBag& bag = bags[a];
      bag.article_id = a;
      bag.tweet_indices.push_back(static_cast<std::uint32_t>(i));
      for (const std::string& tag : tags) ++bag.hashtag_counts[tag];
    }
  }
  run.pool = std::move(pool);
  run.bags = std::move(bags);

  run.local_profiles = build_local_profiles(run.bags, run.tweets);
  run.global_profiles = build_global_profiles(run.tweets);
  run.article_profiles = build_article_profiles(run.articles, config.tokenizer);

  FeatureDiagnostics diag;
  run.pairs = compute_features(run.bags, run.local_profiles, run.global_profiles,
                               run.article_profiles, &diag);
  if (diag.missing_global_profile > 0) {
    run.notes.push_back("pairs lacking a global profile: " +
                        std::to_string(diag.missing_global_profile));
  }
  return run;
}

void attach_labels(std::vector<ScoredPair>& pairs, const std::vector<LabeledPair>& labels,
                   bool closed_world) {
  std::map<std::pair<std::string, std::string>, int> grades;
  for (const LabeledPair& l : labels) {
    grades[{l.article_id, l.hashtag}] = l.grade;
  }
  for (ScoredPair& p : pairs) {
    auto it = grades.find({p.article_id, p.hashtag});
    if (it != grades.end()) {
      p.label = it->second;
      p.relevant = it->second >= 1;
    } else if (closed_world) {
      p.label = 0;
      p.relevant = false;
    }
  }
}

std::vector<ScoredPair> labeled_subset(const std::vector<ScoredPair>& pairs) {
  std::vector<ScoredPair> out;
  for (const ScoredPair& p : pairs) {
    if (p.relevant.has_value()) out.push_back(p);
  }
  return out;
}

void score_pairs(std::vector<ScoredPair>& pairs, const LogisticModel& model) {
  for (ScoredPair& p : pairs) p.score = score_pair(model, p.features);
}

std::map<std::string, std::vector<ScoredPair>> by_article(const std::vector<ScoredPair>& pairs) {
  std::map<std::string, std::vector<ScoredPair>> grouped;
  for (const ScoredPair& p : pairs) grouped[p.article_id].push_back(p);
  return grouped;
}

void write_ranked_csv(const std::map<std::string, std::vector<ScoredPair>>& ranked,
                      const std::string& path, const std::string& config_echo) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write ranked output: " + path);
  if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
  out << "article_id,rank,hashtag,score,lfr,lco,gfr,gco\n";
  char buf[256];
  for (const auto& [article_id, pairs] : ranked) {
    int rank = 1;
    for (const ScoredPair& p : pairs) {
      std::snprintf(buf, sizeof buf, ",%d,%s,%.6f,%.6f,%.6f,%.6f,%.6f\n", rank++,
                    p.hashtag.c_str(), p.score.value_or(0.0), p.features.local_freq,
                    p.features.local_cosine, p.features.global_freq, p.features.global_cosine);
      out << article_id << buf;
    }
  }
}

void write_features_csv(const std::vector<ScoredPair>& pairs, const std::string& path,
                        const std::string& config_echo) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write features: " + path);
  if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
  out << "article_id,hashtag,lfr,lco,gfr,gco,label\n";
  char buf[320];
  for (const ScoredPair& p : pairs) {
    std::snprintf(buf, sizeof buf, ",%s,%.17g,%.17g,%.17g,%.17g,", p.hashtag.c_str(),
                  p.features.local_freq, p.features.local_cosine, p.features.global_freq,
                  p.features.global_cosine);
    out << p.article_id << buf;
    if (p.label.has_value()) out << *p.label;
    out << '\n';
  }
}

std::vector<ScoredPair> read_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open features: " + path);
  std::vector<ScoredPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    // article_id may contain commas: parse the last six fields from the right.
    std::vector<std::size_t> cuts;
    std::size_t from = std::string::npos;
    for (int i = 0; i < 6; ++i) {
      from = line.rfind(',', from == std::string::npos ? std::string::npos : from - 1);
      if (from == std::string::npos || from == 0) {
        throw ParseError("bad feature row at " + path + ":" + std::to_string(lineno));
      }
      cuts.push_back(from);
    }
    std::reverse(cuts.begin(), cuts.end());
    auto field = [&](int i) {
      std::size_t b = cuts[static_cast<std::size_t>(i)] + 1;
      std::size_t e = static_cast<std::size_t>(i) + 1 < cuts.size()
                          ? cuts[static_cast<std::size_t>(i) + 1]
                          : line.size();
      return line.substr(b, e - b);
    };
    try {
      ScoredPair p;
      p.article_id = line.substr(0, cuts[0]);
      p.hashtag = field(0);
      p.features.local_freq = std::stod(field(1));
      p.features.local_cosine = std::stod(field(2));
      p.features.global_freq = std::stod(field(3));
      p.features.global_cosine = std::stod(field(4));
      std::string label = field(5);
      if (!label.empty()) {
        p.label = std::stoi(label);
        p.relevant = *p.label >= 1;
      }
      pairs.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw ParseError("bad feature row at " + path + ":" + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return pairs;
}

}  // namespace hashlink

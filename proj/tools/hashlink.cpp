// hashlink: connect a replayed news stream to its hashtag conversations.
//
// Subcommands: synth, extract, pool, match, featurize, train, rank, eval,
// label, pipeline. Exit codes: 0 success, 1 usage/config, 2 data error,
// 3 internal error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hashlink/corpus.hpp"
#include "hashlink/errors.hpp"
#include "hashlink/experiments.hpp"
#include "hashlink/matcher.hpp"
#include "hashlink/metrics.hpp"
#include "hashlink/pipeline.hpp"
#include "hashlink/predicates.hpp"
#include "hashlink/profiles.hpp"
#include "hashlink/ranker.hpp"
#include "hashlink/state.hpp"
#include "hashlink/synthgen.hpp"
#include "hashlink/textproc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hashlink;

namespace {

constexpr int kConfigFileVersion = 1;

struct Options {
  std::string config_path;
  std::string articles_path;
  std::string tweets_path;
  std::string labels_path;
  std::string labels_b_path;
  std::string features_path;
  std::string model_path;
  std::string state_path;
  std::string out;
  std::string window_start, window_end;
  std::string train_start, train_end, test_start, test_end;
  std::string kind;  // eval experiment kind
  std::string annotator;
  int cap = -1;
  int top_k = -1;
  double threshold = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool permissive = false;
  bool dump_bag_lines = false;

  // synth overrides
  SynthConfig synth;
  json file;  // parsed config file
};

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw ParseError("bad config file " + path + ": " + e.what());
  }
  if (cfg.value("version", kConfigFileVersion) != kConfigFileVersion) {
    throw ConfigError("unsupported config version in " + path);
  }
  return cfg;
}

template <typename T>
T cfg_get(const json& cfg, const std::string& key, T fallback) {
  return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

PipelineConfig pipeline_config(const Options& opt) {
  const json& f = opt.file;
  PipelineConfig cfg;
  cfg.predicate_cap = opt.cap > 0 ? opt.cap : cfg_get(f, "predicate_cap", 400);
  cfg.refresh_period = cfg_get<std::int64_t>(f, "refresh_period_minutes", 30) * 60;
  cfg.threshold = opt.threshold > 0.0 ? opt.threshold : cfg_get(f, "threshold", 0.5);
  cfg.top_k = opt.top_k > 0 ? opt.top_k : cfg_get(f, "top_k", 3);
  cfg.max_phrases = cfg_get<std::size_t>(f, "max_phrases", 40);
  cfg.stem_predicates = cfg_get(f, "stem_predicates", true);
  cfg.tokenizer.min_token_len = cfg_get<std::size_t>(f, "min_token_len", 2);
  if (f.contains("stopwords")) {
    cfg.tokenizer.stopwords = load_term_list(f.at("stopwords").get<std::string>());
  }
  cfg.keywords.min_term_len = cfg_get<std::size_t>(f, "min_keyword_len", 3);
  if (f.contains("acronyms")) {
    cfg.keywords.acronym_whitelist = load_term_list(f.at("acronyms").get<std::string>());
  }
  if (f.contains("trainer")) {
    const json& t = f.at("trainer");
    cfg.trainer.learning_rate = cfg_get(t, "learning_rate", cfg.trainer.learning_rate);
    cfg.trainer.epochs = cfg_get(t, "epochs", cfg.trainer.epochs);
    cfg.trainer.l2_lambda = cfg_get(t, "l2_lambda", cfg.trainer.l2_lambda);
    cfg.trainer.seed = cfg_get(t, "seed", cfg.trainer.seed);
  }
  cfg.seed = opt.seed_set ? opt.seed : cfg_get<std::uint64_t>(f, "seed", 0);
  cfg.trainer.seed = cfg.seed ? cfg.seed : cfg.trainer.seed;
  cfg.validate();
  return cfg;
}

// Effective config echoed into outputs for provenance.
std::string config_echo(const Options& opt, const PipelineConfig& cfg) {
  json echo = opt.file;
  echo["version"] = kConfigFileVersion;
  echo["predicate_cap"] = cfg.predicate_cap;
  echo["refresh_period_minutes"] = cfg.refresh_period / 60;
  echo["threshold"] = cfg.threshold;
  echo["top_k"] = cfg.top_k;
  echo["max_phrases"] = cfg.max_phrases;
  echo["stem_predicates"] = cfg.stem_predicates;
  echo["min_token_len"] = cfg.tokenizer.min_token_len;
  echo["min_keyword_len"] = cfg.keywords.min_term_len;
  echo["seed"] = cfg.seed;
  echo["trainer"] = {{"learning_rate", cfg.trainer.learning_rate},
                     {"epochs", cfg.trainer.epochs},
                     {"l2_lambda", cfg.trainer.l2_lambda},
                     {"seed", cfg.trainer.seed}};
  return echo.dump();
}

StreamWindow window_from(const std::string& start, const std::string& end,
                         const std::string& label) {
  StreamWindow w;
  w.start = parse_iso8601_utc(start);
  w.end = parse_iso8601_utc(end);
  w.label = label;
  if (w.start >= w.end) throw ConfigError("window start must precede end");
  return w;
}

StreamWindow window_or_span(const Options& opt, const std::vector<Article>& articles,
                            const std::vector<Tweet>& tweets) {
  if (!opt.window_start.empty() && !opt.window_end.empty()) {
    return window_from(opt.window_start, opt.window_end, "window");
  }
  if (opt.file.contains("window")) {
    const json& w = opt.file.at("window");
    return window_from(w.at("start").get<std::string>(), w.at("end").get<std::string>(),
                       w.value("label", "window"));
  }
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi =
      std::numeric_limits<std::int64_t>::min();
  for (const Article& a : articles) {
    lo = std::min(lo, a.published_at);
    hi = std::max(hi, a.published_at);
  }
  for (const Tweet& t : tweets) {
    lo = std::min(lo, t.created_at);
    hi = std::max(hi, t.created_at);
  }
  if (lo > hi) throw ConfigError("empty corpus and no window given");
  return {lo, hi + 1, "all"};
}

std::vector<Article> require_articles(const Options& opt) {
  std::string path = !opt.articles_path.empty()
                         ? opt.articles_path
                         : cfg_get<std::string>(opt.file, "articles", "");
  if (path.empty()) throw ConfigError("missing required input: articles file (--articles)");
  return load_articles(path);
}

std::vector<Tweet> require_tweets(const Options& opt) {
  std::string path =
      !opt.tweets_path.empty() ? opt.tweets_path : cfg_get<std::string>(opt.file, "tweets", "");
  if (path.empty()) throw ConfigError("missing required input: tweets file (--tweets)");
  TweetLoadOptions lo;
  lo.permissive = opt.permissive;
  std::size_t skipped = 0;
  auto tweets = load_tweets(path, lo, &skipped);
  if (skipped > 0) std::cerr << "skipped " << skipped << " malformed tweet records\n";
  return tweets;
}

// Consensus labels: two annotator files run through the agreement filter,
// a single file is taken as already-consensus grades.
std::vector<LabeledPair> require_labels(const Options& opt) {
  std::string path =
      !opt.labels_path.empty() ? opt.labels_path : cfg_get<std::string>(opt.file, "labels", "");
  if (path.empty()) throw ConfigError("missing required input: label file (--labels)");
  std::string path_b = !opt.labels_b_path.empty() ? opt.labels_b_path
                                                  : cfg_get<std::string>(opt.file, "labels_b", "");
  std::vector<AnnotationRecord> a = load_annotations(path);
  if (!path_b.empty()) {
    std::vector<AnnotationRecord> b = load_annotations(path_b);
    AgreementResult res = agreement_filter(a, b);
    std::cerr << "inter-annotator agreement: " << res.rate << " (" << res.agreed_count << "/"
              << res.total << ")\n";
    return res.agreed;
  }
  std::vector<LabeledPair> out;
  std::map<std::pair<std::string, std::string>, int> dedup;
  for (const AnnotationRecord& r : a) {
    auto key = std::make_pair(r.article_id, r.hashtag);
    auto it = dedup.find(key);
    if (it == dedup.end()) {
      dedup.emplace(key, r.grade);
    } else {
      it->second = std::max(it->second, r.grade);
    }
  }
  for (const auto& [key, grade] : dedup) out.push_back({key.first, key.second, grade});
  return out;
}

// Atomic-ish artifact staging: build everything under <out>/.staging, then
// rename into place so failed runs never clobber previous results.
class Staging {
 public:
  explicit Staging(const std::string& out_dir) : out_(out_dir), staging_(out_dir + "/.staging") {
    fs::create_directories(staging_);
  }

  std::string path(const std::string& name) const { return staging_ + "/" + name; }

  void commit() {
    for (const auto& entry : fs::directory_iterator(staging_)) {
      fs::rename(entry.path(), fs::path(out_) / entry.path().filename());
    }
    fs::remove_all(staging_);
  }

 private:
  std::string out_;
  std::string staging_;
};

class StateDirLock {
 public:
  explicit StateDirLock(const std::string& dir) : path_(dir + "/lock") {
    fs::create_directories(dir);
    std::FILE* f = std::fopen(path_.c_str(), "wx");  // exclusive create
    if (!f) throw ConfigError("state dir is locked by another run: " + path_);
    std::fputs("locked\n", f);
    std::fclose(f);
  }
  ~StateDirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }

 private:
  std::string path_;
};

std::string out_dir(const Options& opt) {
  std::string dir = !opt.out.empty() ? opt.out : cfg_get<std::string>(opt.file, "out", "");
  if (dir.empty()) throw ConfigError("missing required output directory (--out)");
  fs::create_directories(dir);
  return dir;
}

int cmd_synth(Options& opt) {
  std::string dir = out_dir(opt);
  if (opt.seed_set) opt.synth.seed = opt.seed;
  SynthOutput output = generate(opt.synth);
  write_corpus(output, dir);
  std::cout << "synth: " << output.articles.size() << " articles, " << output.tweets.size()
            << " tweets, " << output.truth.size() << " planted labels -> " << dir << '\n';
  return 0;
}

int cmd_extract(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  std::vector<Article> articles = require_articles(opt);
  std::string dir = out_dir(opt);
  std::ofstream out(dir + "/keywords.txt");
  for (const Article& a : articles) {
    auto keywords = extract_keywords(a.headline, a.subheadline, cfg.max_phrases, cfg.tokenizer,
                                     cfg.keywords);
    out << a.id;
    for (const KeywordPhrase& kw : keywords) {
      out << '\t' << (kw.frozen ? "P:" : "t:");
      for (std::size_t i = 0; i < kw.terms.size(); ++i) {
        if (i) out << ' ';
        out << kw.terms[i];
      }
    }
    out << '\n';
  }
  std::cout << "extract: keywords for " << articles.size() << " articles -> " << dir
            << "/keywords.txt\n";
  return 0;
}

int cmd_pool(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  std::vector<Article> articles = require_articles(opt);
  std::vector<std::vector<FilterPredicate>> per_article;
  for (const Article& a : articles) {
    auto keywords = extract_keywords(a.headline, a.subheadline, cfg.max_phrases, cfg.tokenizer,
                                     cfg.keywords);
    if (!keywords.empty()) per_article.push_back(build_predicates(keywords, a.id));
  }
  PredicatePool pool = pool_predicates(per_article, cfg.predicate_cap);
  std::string dir = out_dir(opt);
  std::ofstream out(dir + "/pool.txt");
  dump_pool(pool, out);
  std::cout << "pool: " << pool.size() << " predicates (cap " << cfg.predicate_cap << ") -> "
            << dir << "/pool.txt\n";
  return 0;
}

int cmd_match(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  std::vector<Article> articles = require_articles(opt);
  std::vector<Tweet> tweets = require_tweets(opt);
  StreamWindow window = window_or_span(opt, articles, tweets);
  WindowRun run = run_window(cfg, articles, tweets, window);
  std::string dir = out_dir(opt);
  std::ofstream out(dir + "/bags.txt");
  if (opt.dump_bag_lines) {
    PredicateIndex index(run.pool, cfg.tokenizer, cfg.stem_predicates);
    dump_bags(index, run.tweets, out);
  } else {
    for (const auto& [article_id, bag] : run.bags) {
      out << article_id << '\t' << bag.tweet_indices.size() << " tweets\t"
          << bag.hashtag_counts.size() << " hashtags\n";
    }
  }
  std::size_t assigned = 0;
  for (const auto& [id, bag] : run.bags) assigned += bag.tweet_indices.size();
  std::cout << "match: " << run.bags.size() << " bags, " << assigned
            << " tweet assignments -> " << dir << "/bags.txt\n";
  return 0;
}

int cmd_featurize(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  std::vector<Article> articles = require_articles(opt);
  std::vector<Tweet> tweets = require_tweets(opt);
  StreamWindow window = window_or_span(opt, articles, tweets);
  WindowRun run = run_window(cfg, articles, tweets, window);
  if (!opt.labels_path.empty() || opt.file.contains("labels")) {
    attach_labels(run.pairs, require_labels(opt), cfg_get(opt.file, "closed_world", true));
  }
  std::string dir = out_dir(opt);
  write_features_csv(run.pairs, dir + "/features.csv", config_echo(opt, cfg));
  std::cout << "featurize: " << run.pairs.size() << " pairs -> " << dir << "/features.csv\n";
  return 0;
}

int cmd_train(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  if (opt.features_path.empty()) throw ConfigError("missing required input: --features");
  std::vector<ScoredPair> pairs = read_features_csv(opt.features_path);
  if (!opt.labels_path.empty()) {
    attach_labels(pairs, require_labels(opt), cfg_get(opt.file, "closed_world", true));
  }
  LogisticModel model = train_logistic(labeled_subset(pairs), cfg.trainer);
  std::string dir = out_dir(opt);
  save_model(model, dir + "/model.txt");
  std::cout << "train: final loss " << model.final_loss << ", weights [" << model.weights[0]
            << ", " << model.weights[1] << ", " << model.weights[2] << ", " << model.weights[3]
            << "], bias " << model.bias << " -> " << dir << "/model.txt\n";
  return 0;
}

int cmd_rank(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  if (opt.features_path.empty()) throw ConfigError("missing required input: --features");
  if (opt.model_path.empty()) throw ConfigError("missing required input: --model");
  std::vector<ScoredPair> pairs = read_features_csv(opt.features_path);
  LogisticModel model = load_model(opt.model_path);
  score_pairs(pairs, model);
  std::map<std::string, std::vector<ScoredPair>> ranked;
  for (auto& [article_id, article_pairs] : by_article(pairs)) {
    auto top = rank_hashtags(article_pairs, cfg.top_k, cfg.threshold);
    if (!top.empty()) ranked.emplace(article_id, std::move(top));
  }
  std::string dir = out_dir(opt);
  write_ranked_csv(ranked, dir + "/ranked.csv", config_echo(opt, cfg));
  std::cout << "rank: " << ranked.size() << " articles with relevant hashtags -> " << dir
            << "/ranked.csv\n";
  return 0;
}

int cmd_eval(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  ExperimentInputs inputs;
  inputs.articles = require_articles(opt);
  inputs.tweets = require_tweets(opt);
  inputs.labels = require_labels(opt);
  inputs.closed_world = cfg_get(opt.file, "closed_world", true);

  auto windows_from = [&](const char* a_start, const char* a_end, const std::string& s,
                          const std::string& e, const char* key) {
    if (!s.empty() && !e.empty()) return window_from(s, e, key);
    if (opt.file.contains(key)) {
      const json& w = opt.file.at(key);
      return window_from(w.at("start").get<std::string>(), w.at("end").get<std::string>(), key);
    }
    throw ConfigError(std::string("missing required window: ") + a_start + "/" + a_end);
  };
  inputs.train_window =
      windows_from("--train-start", "--train-end", opt.train_start, opt.train_end, "train_window");
  inputs.test_window =
      windows_from("--test-start", "--test-end", opt.test_start, opt.test_end, "test_window");

  std::string dir = out_dir(opt);
  std::string echo = config_echo(opt, cfg);
  auto write_reports = [&](const auto& r) {
    print_report(r, std::cout);
    std::ofstream(dir + "/report.json") << report_json(r) << '\n';
    std::ofstream txt(dir + "/report.txt");
    txt << "# config: " << echo << '\n';
    print_report(r, txt);
  };
  if (opt.kind == "small") {
    write_reports(run_small(cfg, inputs));
  } else if (opt.kind == "medium") {
    write_reports(run_medium(cfg, inputs));
  } else if (opt.kind == "large") {
    LargeReport r = run_large(cfg, inputs);
    write_reports(r);
    write_ranked_csv(r.ranked, dir + "/ranked.csv", echo);
  } else {
    throw ConfigError("unknown experiment kind '" + opt.kind + "' (small|medium|large)");
  }
  return 0;
}

int cmd_label(Options& opt) {
  if (opt.features_path.empty()) throw ConfigError("missing required input: --features");
  if (opt.annotator.empty()) throw ConfigError("missing required --annotator id");
  std::string dir = out_dir(opt);
  const std::string label_path = dir + "/labels-" + opt.annotator + ".csv";

  std::vector<ScoredPair> pairs = read_features_csv(opt.features_path);
  std::map<std::string, std::string> headlines;
  if (!opt.articles_path.empty() || opt.file.contains("articles")) {
    for (const Article& a : require_articles(opt)) headlines[a.id] = a.headline;
  }
  std::map<LocalProfileKey, HashtagProfile> local_profiles;
  if (!opt.state_path.empty()) {
    for (HashtagProfile& p : load_state(opt.state_path).hashtag_profiles) {
      if (p.scope == ProfileScope::local) local_profiles.emplace(LocalProfileKey{p.article_id, p.tag}, std::move(p));
    }
  }
  std::set<std::pair<std::string, std::string>> graded;
  if (fs::exists(label_path)) {
    for (const AnnotationRecord& r : load_annotations(label_path)) {
      if (r.annotator_id == opt.annotator) graded.insert({r.article_id, r.hashtag});
    }
  }

  std::size_t asked = 0, skipped = 0;
  for (const ScoredPair& p : pairs) {
    if (graded.count({p.article_id, p.hashtag})) {
      ++skipped;
      continue;
    }
    std::cout << "\narticle:  " << p.article_id << '\n';
    auto h = headlines.find(p.article_id);
    if (h != headlines.end()) std::cout << "headline: " << h->second << '\n';
    std::cout << "hashtag:  #" << p.hashtag << '\n';
    char buf[160];
    std::snprintf(buf, sizeof buf, "features: lfr %.3f  lco %.3f  gfr %.3f  gco %.3f\n",
                  p.features.local_freq, p.features.local_cosine, p.features.global_freq,
                  p.features.global_cosine);
    std::cout << buf;
    auto lp = local_profiles.find({p.article_id, p.hashtag});
    if (lp != local_profiles.end()) {
      std::vector<std::pair<std::string, double>> terms(lp->second.term_weights.begin(),
                                                        lp->second.term_weights.end());
      std::sort(terms.begin(), terms.end(),
                [](const auto& a, const auto& b) { return a.second > b.second; });
      std::cout << "profile: ";
      for (std::size_t i = 0; i < std::min<std::size_t>(8, terms.size()); ++i) {
        std::cout << ' ' << terms[i].first;
      }
      std::cout << '\n';
    }
    for (;;) {
      std::cout << "grade [2 specific / 1 general / 0 irrelevant, q quits]: " << std::flush;
      std::string reply;
      if (!std::getline(std::cin, reply)) reply = "q";
      if (reply == "q" || reply == "Q") {
        std::cout << "labeled " << asked << " pairs (" << skipped << " already graded)\n";
        return 0;
      }
      if (reply == "0" || reply == "1" || reply == "2") {
        append_annotation(label_path,
                          {p.article_id, p.hashtag, opt.annotator, reply[0] - '0'});
        ++asked;
        break;
      }
      std::cout << "please answer 0, 1, 2 or q\n";
    }
  }
  std::cout << "labeled " << asked << " pairs (" << skipped << " already graded); all done\n";
  return 0;
}

int cmd_pipeline(Options& opt) {
  PipelineConfig cfg = pipeline_config(opt);
  std::vector<Article> articles = require_articles(opt);
  std::vector<Tweet> tweets = require_tweets(opt);
  StreamWindow window = window_or_span(opt, articles, tweets);

  const bool has_labels = !opt.labels_path.empty() || opt.file.contains("labels");
  const bool has_model = !opt.model_path.empty() || opt.file.contains("model");
  if (!has_labels && !has_model) {
    throw ConfigError("pipeline needs --labels (train inline) or --model (pre-trained)");
  }

  std::string dir = out_dir(opt);
  StateDirLock lock(dir);
  Staging staging(dir);
  std::string echo = config_echo(opt, cfg);
  std::ofstream(staging.path("effective_config.json")) << echo << '\n';

  WindowRun run = run_window(cfg, articles, tweets, window);
  {
    std::ofstream out(staging.path("pool.txt"));
    dump_pool(run.pool, out);
  }
  {
    std::ofstream out(staging.path("profiles.txt"));
    dump_profiles(run.local_profiles, run.global_profiles, 10, out);
  }

  LogisticModel model;
  if (has_labels) {
    attach_labels(run.pairs, require_labels(opt), cfg_get(opt.file, "closed_world", true));
    model = train_logistic(labeled_subset(run.pairs), cfg.trainer);
  } else {
    std::string path = !opt.model_path.empty() ? opt.model_path
                                               : opt.file.at("model").get<std::string>();
    model = load_model(path);
  }
  save_model(model, staging.path("model.txt"));
  write_features_csv(run.pairs, staging.path("features.csv"), echo);

  score_pairs(run.pairs, model);
  std::map<std::string, std::vector<ScoredPair>> ranked;
  for (auto& [article_id, article_pairs] : by_article(run.pairs)) {
    auto top = rank_hashtags(article_pairs, cfg.top_k, cfg.threshold);
    if (!top.empty()) ranked.emplace(article_id, std::move(top));
  }
  write_ranked_csv(ranked, staging.path("ranked.csv"), echo);

  PersistedState state;
  for (const auto& [key, p] : run.local_profiles) state.hashtag_profiles.push_back(p);
  for (const auto& [tag, p] : run.global_profiles) state.hashtag_profiles.push_back(p);
  for (const auto& [id, p] : run.article_profiles) state.article_profiles.push_back(p);
  state.models.push_back(model);
  state.scored_pairs = run.pairs;
  save_state(staging.path("state.jsonl"), state);

  {
    std::ofstream out(staging.path("notes.txt"));
    for (const std::string& n : run.notes) out << n << '\n';
    if (run.pairs.empty()) out << "no candidate pairs\n";
  }
  staging.commit();

  if (run.pairs.empty()) std::cout << "pipeline: no candidate pairs\n";
  std::cout << "pipeline: " << run.articles.size() << " articles, " << run.tweets.size()
            << " tweets, " << run.bags.size() << " bags, " << run.pairs.size() << " pairs, "
            << ranked.size() << " ranked articles -> " << dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"news-to-hashtag stream linking pipeline"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--config", opt.config_path, "JSON config file; flags override its values");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--articles", opt.articles_path, "article stream (JSONL)");
    sub->add_option("--tweets", opt.tweets_path, "tweet stream (JSONL)");
    sub->add_option("--labels", opt.labels_path, "label file (CSV)");
    sub->add_option("--labels-b", opt.labels_b_path, "second annotator label file");
    sub->add_option("--features", opt.features_path, "features CSV");
    sub->add_option("--model", opt.model_path, "model file");
    sub->add_option("--state", opt.state_path, "state file (JSONL)");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--window-start", opt.window_start, "window start (ISO-8601 UTC)");
    sub->add_option("--window-end", opt.window_end, "window end (ISO-8601 UTC, exclusive)");
    sub->add_option("--cap", opt.cap, "predicate pool cap");
    sub->add_option("--top-k", opt.top_k, "ranked hashtags per article");
    sub->add_option("--threshold", opt.threshold, "classification threshold");
    sub->add_flag("--permissive", opt.permissive, "skip malformed tweet records");
    sub->add_option("--seed", opt.seed, "run seed")->each([&](const std::string&) {
      opt.seed_set = true;
    });
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_common(synth);
  synth->add_option("--articles-n", opt.synth.n_articles, "articles to generate");
  synth->add_option("--topics", opt.synth.n_topics, "topic count");
  synth->add_option("--tweets-per-topic", opt.synth.tweets_per_topic, "relevant tweets per topic");
  synth->add_option("--noise", opt.synth.noise_tweet_fraction, "noise tweet fraction");
  synth->add_option("--url-echo", opt.synth.url_echo_fraction, "URL-echo article fraction");
  synth->add_option("--windows", opt.synth.n_windows, "number of day windows");
  synth->add_option("--vocab", opt.synth.vocab_size, "vocabulary size");

  CLI::App* extract = app.add_subcommand("extract", "extract article keywords");
  add_common(extract);
  CLI::App* pool = app.add_subcommand("pool", "build the pooled predicate set");
  add_common(pool);
  CLI::App* match = app.add_subcommand("match", "assign tweets to article bags");
  add_common(match);
  match->add_flag("--dump-bags", opt.dump_bag_lines,
                  "write one line per (article, tweet, predicate)");
  CLI::App* featurize = app.add_subcommand("featurize", "compute pair features");
  add_common(featurize);
  CLI::App* train = app.add_subcommand("train", "train the logistic model");
  add_common(train);
  CLI::App* rank = app.add_subcommand("rank", "rank hashtags per article");
  add_common(rank);
  CLI::App* eval = app.add_subcommand("eval", "run an experiment (small|medium|large)");
  add_common(eval);
  eval->add_option("--kind", opt.kind, "experiment kind")->required();
  eval->add_option("--train-start", opt.train_start, "train window start");
  eval->add_option("--train-end", opt.train_end, "train window end");
  eval->add_option("--test-start", opt.test_start, "test window start");
  eval->add_option("--test-end", opt.test_end, "test window end");
  CLI::App* label = app.add_subcommand("label", "interactive pair labeling");
  add_common(label);
  label->add_option("--annotator", opt.annotator, "annotator id");
  CLI::App* pipeline = app.add_subcommand("pipeline", "full window pipeline");
  add_common(pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!opt.config_path.empty()) opt.file = load_config_file(opt.config_path);
    if (synth->parsed()) return cmd_synth(opt);
    if (extract->parsed()) return cmd_extract(opt);
    if (pool->parsed()) return cmd_pool(opt);
    if (match->parsed()) return cmd_match(opt);
    if (featurize->parsed()) return cmd_featurize(opt);
    if (train->parsed()) return cmd_train(opt);
    if (rank->parsed()) return cmd_rank(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (label->parsed()) return cmd_label(opt);
    if (pipeline->parsed()) return cmd_pipeline(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

#include "hashlink/synthgen.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <random>

#include "hashlink/errors.hpp"

namespace hashlink {

namespace {

// mt19937_64 output is pinned by the standard; bounded draws below avoid the
// implementation-defined std distributions so corpora are portable bit-exact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real01() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  // k distinct elements, order randomized
  template <typename T>
  std::vector<T> sample(const std::vector<T>& v, std::size_t k) {
    std::vector<T> pool = v;
    shuffle(pool);
    pool.resize(std::min(k, pool.size()));
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

const char* kSyllables[] = {
    "ba", "bi", "bo", "bu", "da", "di", "do", "du", "fa", "fi", "fo", "fu", "ga",
    "gi", "go", "gu", "ka", "ki", "ko", "ku", "la", "li", "lo", "lu", "ma", "mi",
    "mo", "mu", "na", "ni", "no", "nu", "pa", "pi", "po", "pu", "ra", "ri", "ro",
    "ru", "ta", "ti", "to", "tu", "va", "vi", "vo", "vu", "za", "zi", "zo", "zu",
};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

// Unique pronounceable word per index; vowel-final so the stemmer keeps it intact.
std::string make_word(std::size_t i) {
  std::string w;
  w += kSyllables[(i / (kSyllableCount * kSyllableCount)) % kSyllableCount];
  w += kSyllables[(i / kSyllableCount) % kSyllableCount];
  w += kSyllables[i % kSyllableCount];
  return w;
}

std::string capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

struct Topic {
  std::vector<std::string> keywords;
  std::vector<std::string> flavor;
  std::vector<std::string> entity;  // two words, one named entity
  std::vector<std::string> specific_tags;
  bool hijacked = false;
  std::string hijack_tag;
};

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s.push_back(' ');
    s += words[i];
  }
  return s;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_articles < 1 || n_topics < 1 || tweets_per_topic < 1 || relevant_tags_per_article < 1 ||
      vocab_size < 1 || n_windows < 1) {
    throw ConfigError("synth: all counts must be >= 1");
  }
  if (noise_tweet_fraction < 0.0 || noise_tweet_fraction > 1.0 || noise_tweet_fraction >= 0.999) {
    throw ConfigError("synth: noise_tweet_fraction must lie in [0, 1)");
  }
  if (url_echo_fraction < 0.0 || url_echo_fraction > 1.0) {
    throw ConfigError("synth: url_echo_fraction must lie in [0, 1]");
  }
  if (hijack_topic_fraction < 0.0 || hijack_topic_fraction > 1.0) {
    throw ConfigError("synth: hijack_topic_fraction must lie in [0, 1]");
  }
  const long needed =
      static_cast<long>(n_topics) *
          (keywords_per_topic + flavor_terms_per_topic + 2 + relevant_tags_per_article) +
      general_tags + spam_tags + background_terms;
  if (needed > vocab_size) {
    throw ConfigError("synth: vocabulary too small for the topic layout (need " +
                      std::to_string(needed) + ", have " + std::to_string(vocab_size) + ")");
  }
}

SynthOutput generate(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  std::size_t next_word = 0;
  auto take_words = [&](std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(make_word(next_word++));
    return out;
  };

  std::vector<Topic> topics(static_cast<std::size_t>(cfg.n_topics));
  for (Topic& t : topics) {
    t.keywords = take_words(static_cast<std::size_t>(cfg.keywords_per_topic));
    t.flavor = take_words(static_cast<std::size_t>(cfg.flavor_terms_per_topic));
    t.entity = take_words(2);
    t.specific_tags = take_words(static_cast<std::size_t>(cfg.relevant_tags_per_article));
  }
  const std::vector<std::string> general_tags = take_words(static_cast<std::size_t>(cfg.general_tags));
  const std::vector<std::string> spam_tags = take_words(static_cast<std::size_t>(cfg.spam_tags));
  const std::vector<std::string> background = take_words(static_cast<std::size_t>(cfg.background_terms));

  const std::size_t n_hijacked = static_cast<std::size_t>(
      cfg.hijack_topic_fraction * static_cast<double>(cfg.n_topics) + 0.5);
  for (std::size_t k = 0; k < n_hijacked && k < topics.size(); ++k) {
    topics[k].hijacked = true;
    topics[k].hijack_tag = spam_tags[k % spam_tags.size()];
  }

  auto window_start = [&](int w) { return cfg.start_time + static_cast<std::int64_t>(w) * 86400; };

  SynthOutput out;

  // Articles: topic cycles fastest so every window covers every topic.
  for (int j = 0; j < cfg.n_articles; ++j) {
    const std::size_t k = static_cast<std::size_t>(j) % topics.size();
    const Topic& topic = topics[k];
    const int w = (j / cfg.n_topics) % cfg.n_windows;

    std::vector<std::string> kws = topic.keywords;
    rng.shuffle(kws);

    Article a;
    a.id = "http://news.example/" + topic.keywords[0] + "-" + std::to_string(j);
    a.published_at = window_start(w) + (j % 120);
    a.headline = capitalize(topic.entity[0]) + " " + capitalize(topic.entity[1]) + " on " +
                 kws[0] + " " + kws[1] + " and " + kws[2] + " " + kws[3] + " " + kws[4];
    a.subheadline = "There is more of " + kws[rng.index(kws.size())] + " and " +
                    kws[rng.index(kws.size())] + " after " + rng.pick(topic.flavor);
    std::vector<std::string> body_words;
    for (const std::string& kw : topic.keywords) {
      for (int r = 0; r < 3; ++r) body_words.push_back(kw);
    }
    for (int r = 0; r < 10; ++r) body_words.push_back(rng.pick(topic.flavor));
    for (int r = 0; r < 5; ++r) body_words.push_back(rng.pick(background));
    rng.shuffle(body_words);
    a.body = "It was said that " + join(body_words) + ".";
    out.articles.push_back(std::move(a));

    for (const std::string& tag : topic.specific_tags) {
      out.truth.push_back({out.articles.back().id, tag, 2});
    }
    for (const std::string& tag : general_tags) {
      out.truth.push_back({out.articles.back().id, tag, 1});
    }
  }

  std::size_t tweet_seq = 0;
  auto push_tweet = [&](std::int64_t at, std::string text) {
    Tweet t;
    t.id = "t" + std::to_string(tweet_seq++);
    t.created_at = at;
    t.raw_text = std::move(text);
    out.tweets.push_back(std::move(t));
  };
  auto tweet_time = [&](int w) {
    // Clear of the first refresh ticks so every article is in the pool.
    return window_start(w) + 7200 + static_cast<std::int64_t>(rng.index(72000));
  };

  // Relevant tweets: topic terms plus planted hashtags.
  const int per_window = std::max(1, cfg.tweets_per_topic / cfg.n_windows);
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const Topic& topic = topics[k];
    for (int w = 0; w < cfg.n_windows; ++w) {
      for (int i = 0; i < per_window; ++i) {
        std::vector<std::string> words = rng.sample(topic.keywords, 3 + rng.index(2));
        for (auto& fl : rng.sample(topic.flavor, 2 + rng.index(2))) words.push_back(fl);
        if (rng.chance(0.3)) {
          words.push_back(capitalize(topic.entity[0]));
          words.push_back(capitalize(topic.entity[1]));
        }
        rng.shuffle(words);
        std::string text = join(words);
        if (rng.chance(0.75)) text += " #" + rng.pick(topic.specific_tags);
        if (rng.chance(0.25)) text += " #" + rng.pick(general_tags);
        push_tweet(tweet_time(w), std::move(text));
      }
    }
  }

  // Noise tweets: two keywords of a target topic buried in background terms,
  // carrying spam tags. Hijack noise concentrates one tag on one topic.
  const std::size_t n_relevant = out.tweets.size();
  const std::size_t n_noise = static_cast<std::size_t>(
      cfg.noise_tweet_fraction / (1.0 - cfg.noise_tweet_fraction) *
          static_cast<double>(n_relevant) +
      0.5);
  std::vector<std::size_t> hijacked_ids;
  for (std::size_t k = 0; k < topics.size(); ++k) {
    if (topics[k].hijacked) hijacked_ids.push_back(k);
  }
  for (std::size_t i = 0; i < n_noise; ++i) {
    const bool hijack = !hijacked_ids.empty() && rng.chance(0.6);
    const std::size_t k = hijack ? rng.pick(hijacked_ids) : rng.index(topics.size());
    const Topic& topic = topics[k];
    std::vector<std::string> words = rng.sample(topic.keywords, 2);
    for (auto& bg : rng.sample(background, 6 + rng.index(4))) words.push_back(bg);
    rng.shuffle(words);
    std::string text = join(words);
    if (hijack && rng.chance(0.85)) {
      text += " #" + topic.hijack_tag;
    } else {
      text += " #" + rng.pick(spam_tags);
    }
    if (rng.chance(0.15)) text += " #" + rng.pick(spam_tags);
    const int w = static_cast<int>(rng.index(static_cast<std::size_t>(cfg.n_windows)));
    push_tweet(tweet_time(w), std::move(text));
  }

  // URL-echo tweets: the article URL plus planted tags, user-labeled style.
  if (cfg.url_echo_fraction > 0.0) {
    for (std::size_t j = 0; j < out.articles.size(); ++j) {
      if (!rng.chance(cfg.url_echo_fraction)) continue;
      const Article& a = out.articles[j];
      const Topic& topic = topics[j % topics.size()];
      const int w = static_cast<int>((a.published_at - cfg.start_time) / 86400);
      const int n_echo = 1 + static_cast<int>(rng.index(2));
      for (int e = 0; e < n_echo; ++e) {
        std::vector<std::string> words = rng.sample(topic.keywords, 2 + rng.index(2));
        std::string text = join(words) + " " + a.id;
        const std::string& tag =
            rng.chance(0.7) ? rng.pick(topic.specific_tags) : rng.pick(general_tags);
        text += " #" + tag;
        push_tweet(tweet_time(w), std::move(text));
      }
    }
  }

  std::stable_sort(out.articles.begin(), out.articles.end(),
                   [](const Article& a, const Article& b) { return a.published_at < b.published_at; });
  std::stable_sort(out.tweets.begin(), out.tweets.end(),
                   [](const Tweet& a, const Tweet& b) { return a.created_at < b.created_at; });

  // Hashtags/urls are derived fields; fill them the same way the loader does.
  for (Tweet& t : out.tweets) {
    t.hashtags = extract_hashtags(t.raw_text);
    t.urls = extract_urls(t.raw_text);
  }
  return out;
}

void write_corpus(const SynthOutput& output, const std::string& dir) {
  std::filesystem::create_directories(dir);
  save_articles(dir + "/articles.jsonl", output.articles);
  save_tweets(dir + "/tweets.jsonl", output.tweets);
  std::vector<AnnotationRecord> records;
  records.reserve(output.truth.size());
  for (const LabeledPair& p : output.truth) {
    records.push_back({p.article_id, p.hashtag, "synth", p.grade});
  }
  save_annotations(dir + "/labels.csv", records);
}

}  // namespace hashlink

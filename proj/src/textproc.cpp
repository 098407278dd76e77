#include "hashlink/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "hashlink/errors.hpp"
#include "hashlink/stemmer.hpp"

namespace hashlink {

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }
bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

std::string to_lower(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Blanks "http(s)://..." runs and @-mentions so tokenization never sees them.
std::string blank_urls_and_mentions(const std::string& text) {
  std::string out = text;
  for (std::size_t i = 0; i < out.size();) {
    if (out.compare(i, 7, "http://") == 0 || out.compare(i, 8, "https://") == 0) {
      std::size_t j = i;
      while (j < out.size() && !std::isspace(static_cast<unsigned char>(out[j]))) ++j;
      std::fill(out.begin() + i, out.begin() + j, ' ');
      i = j;
    } else if (out[i] == '@' && i + 1 < out.size() &&
               is_word_char(static_cast<unsigned char>(out[i + 1]))) {
      std::size_t j = i + 1;
      while (j < out.size() && is_word_char(static_cast<unsigned char>(out[j]))) ++j;
      std::fill(out.begin() + i, out.begin() + j, ' ');
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

void TokenizerConfig::validate() const {
  if (stopwords.empty()) throw ConfigError("tokenizer stopword set is empty");
  if (min_token_len < 1) throw ConfigError("tokenizer min_token_len must be >= 1");
  if (stemmer != "porter" && stemmer != "none") {
    throw ConfigError("unknown stemmer '" + stemmer + "'");
  }
}

TokenizerConfig default_tokenizer_config() {
  TokenizerConfig cfg;
  cfg.stopwords = default_stopwords();
  return cfg;
}

std::set<std::string> load_term_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open term list: " + path);
  std::set<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    terms.insert(to_lower(line.substr(b, e - b + 1)));
  }
  return terms;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_alnum(c)) {
      cur.push_back(text[i]);
    } else if ((c == '\'' || c == '-') && !cur.empty() && i + 1 < text.size() &&
               is_alnum(static_cast<unsigned char>(text[i + 1]))) {
      cur.push_back(text[i]);  // intra-word apostrophe or hyphen
    } else {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string strip_possessive(const std::string& token) {
  std::string t = token;
  if (t.size() >= 2) {
    char last = t[t.size() - 1];
    if ((last == 's' || last == 'S') && t[t.size() - 2] == '\'') {
      t.resize(t.size() - 2);
    }
  }
  while (!t.empty() && t.back() == '\'') t.resize(t.size() - 1);
  while (!t.empty() && t.front() == '\'') t.erase(t.begin());
  return t;
}

std::string stem_term(const std::string& term, const TokenizerConfig& config) {
  if (config.stemmer == "porter") return porter_stem(term);
  return to_lower(term);
}

std::vector<std::string> normalize_text(const std::string& text, const TokenizerConfig& config,
                                        bool strip_urls_mentions) {
  const std::string cleaned = strip_urls_mentions ? blank_urls_and_mentions(text) : text;
  std::vector<std::string> out;
  for (const std::string& raw : tokenize(cleaned)) {
    std::string t = to_lower(strip_possessive(raw));
    if (t.size() < config.min_token_len) continue;
    if (config.stopwords.count(t)) continue;
    out.push_back(stem_term(t, config));
  }
  return out;
}

std::vector<std::string> normalize_tweet(const std::string& raw_text,
                                         const TokenizerConfig& config) {
  return normalize_text(raw_text, config, /*strip_urls_mentions=*/true);
}

namespace {

struct RawToken {
  std::string text;
  bool run_breaker_before = false;  // punctuation like , ( ) " preceded this token
};

bool is_sentence_end(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == '\n';
}

bool is_run_breaker(char c) {
  return c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '"';
}

// Sentence list, each a token list annotated with run-breaking punctuation.
std::vector<std::vector<RawToken>> split_sentences(const std::string& text) {
  std::vector<std::vector<RawToken>> sentences;
  std::vector<RawToken> cur_sentence;
  std::string cur;
  bool breaker_pending = false;

  auto flush_token = [&] {
    if (!cur.empty()) {
      cur_sentence.push_back({std::move(cur), breaker_pending});
      cur.clear();
      breaker_pending = false;
    }
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!cur_sentence.empty()) {
      sentences.push_back(std::move(cur_sentence));
      cur_sentence.clear();
    }
    breaker_pending = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_alnum(c)) {
      cur.push_back(text[i]);
    } else if ((c == '\'' || c == '-') && !cur.empty() && i + 1 < text.size() &&
               is_alnum(static_cast<unsigned char>(text[i + 1]))) {
      cur.push_back(text[i]);
    } else if (is_sentence_end(text[i])) {
      flush_sentence();
    } else {
      flush_token();
      if (is_run_breaker(text[i])) breaker_pending = true;
    }
  }
  flush_sentence();
  return sentences;
}

bool is_capitalized(const std::string& token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0])) != 0;
}

bool has_possessive(const std::string& token) {
  if (token.size() >= 2) {
    char last = token[token.size() - 1];
    if ((last == 's' || last == 'S') && token[token.size() - 2] == '\'') return true;
  }
  return !token.empty() && token.back() == '\'';
}

}  // namespace

std::vector<KeywordPhrase> extract_keywords(const std::string& headline,
                                            const std::string& subheadline,
                                            std::size_t max_phrases,
                                            const TokenizerConfig& config,
                                            const KeywordOptions& options) {
  if (headline.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ValidationError("extract_keywords: empty headline");
  }
  if (max_phrases < 1) throw ValidationError("extract_keywords: max_phrases must be >= 1");

  // Keywords come from headline + subheadline only; the body is never read.
  std::vector<std::vector<RawToken>> sentences = split_sentences(headline);
  for (auto& s : split_sentences(subheadline)) sentences.push_back(std::move(s));

  std::vector<std::vector<std::string>> frozen_runs;  // cleaned lowercase tokens
  std::vector<std::string> leftover;                  // tokens outside entity runs

  for (const auto& sentence : sentences) {
    std::size_t i = 0;
    // Positions that behave like a sentence start for the single-token rule:
    // the real start, and the position right after a possessive token.
    bool start_like = true;
    while (i < sentence.size()) {
      if (!is_capitalized(sentence[i].text)) {
        leftover.push_back(sentence[i].text);
        start_like = false;
        ++i;
        continue;
      }
      // Extend a maximal capitalized run; a possessive token closes it.
      std::size_t j = i;
      bool closed_by_possessive = false;
      while (j < sentence.size() && is_capitalized(sentence[j].text)) {
        if (j > i && sentence[j].run_breaker_before) break;
        ++j;
        if (has_possessive(sentence[j - 1].text)) {
          closed_by_possessive = true;
          break;
        }
      }
      std::size_t run_len = j - i;
      bool frozen = run_len >= 2 || !start_like;
      std::vector<std::string> run_tokens;
      bool any_content = false;
      for (std::size_t k = i; k < j; ++k) {
        std::string t = to_lower(strip_possessive(sentence[k].text));
        if (t.empty()) continue;
        if (!config.stopwords.count(t)) any_content = true;
        run_tokens.push_back(std::move(t));
      }
      // Runs of stopwords only (title-case artifacts) are not entities.
      if (frozen && any_content) {
        std::vector<std::string> phrase;
        for (auto& t : run_tokens) {
          if (!config.stopwords.count(t)) phrase.push_back(std::move(t));
        }
        if (!phrase.empty()) frozen_runs.push_back(std::move(phrase));
      } else {
        for (std::size_t k = i; k < j; ++k) leftover.push_back(sentence[k].text);
      }
      start_like = closed_by_possessive;
      i = j;
    }
  }

  // Deduplicate frozen phrases by joined text, first appearance wins.
  std::vector<KeywordPhrase> frozen;
  std::set<std::string> frozen_keys;
  std::set<std::string> frozen_terms;  // single-term phrases, for cross-kind dedup
  for (auto& run : frozen_runs) {
    std::string key;
    for (const auto& t : run) {
      if (!key.empty()) key.push_back(' ');
      key += t;
    }
    if (!frozen_keys.insert(key).second) continue;
    if (run.size() == 1) frozen_terms.insert(run[0]);
    frozen.push_back({std::move(run), true});
  }

  // Content-term fallback for everything outside entity runs.
  std::map<std::string, std::size_t> term_freq;
  for (const std::string& raw : leftover) {
    std::string t = to_lower(strip_possessive(raw));
    if (t.empty() || config.stopwords.count(t)) continue;
    if (t.size() < options.min_term_len && !options.acronym_whitelist.count(t)) continue;
    if (frozen_terms.count(t)) continue;
    ++term_freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> terms(term_freq.begin(), term_freq.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<KeywordPhrase> out;
  for (auto& p : frozen) {
    if (out.size() >= max_phrases) break;
    out.push_back(std::move(p));
  }
  for (auto& [term, freq] : terms) {
    if (out.size() >= max_phrases) break;
    out.push_back({{term}, false});
  }
  return out;
}

}  // namespace hashlink

#pragma once

#include <set>
#include <string>
#include <vector>

#include "hashlink/corpus.hpp"

namespace hashlink {

struct TokenizerConfig {
  std::set<std::string> stopwords;  // lowercase, nonempty
  std::size_t min_token_len = 2;
  std::string stemmer = "porter";  // "porter" or "none"

  void validate() const;  // throws ConfigError
};

// Shipped defaults: the versioned English stopword list.
const std::set<std::string>& default_stopwords();
TokenizerConfig default_tokenizer_config();

// Plain-text term list, one per line, '#' comments allowed.
std::set<std::string> load_term_list(const std::string& path);

// Splits on any non-alphanumeric character except intra-word apostrophes
// and hyphens. Case is preserved; empty tokens dropped.
std::vector<std::string> tokenize(const std::string& text);

// Removes a trailing possessive "'s" (or a bare trailing/leading apostrophe).
std::string strip_possessive(const std::string& token);

// Lowercase + stem one term under the configured stemmer.
std::string stem_term(const std::string& term, const TokenizerConfig& config);

// Tokenize -> possessive strip -> lowercase -> stopword/length filter -> stem.
// URL substrings and @-mentions are removed first when strip_urls_mentions.
std::vector<std::string> normalize_text(const std::string& text, const TokenizerConfig& config,
                                        bool strip_urls_mentions);

// Tweet normalization: normalize_text with URL/mention stripping on.
// Hashtag tokens lose the '#' sigil but are kept as ordinary terms.
std::vector<std::string> normalize_tweet(const std::string& raw_text,
                                         const TokenizerConfig& config);

// Short acronyms kept as keywords below the length floor.
const std::set<std::string>& default_acronym_whitelist();

struct KeywordOptions {
  std::size_t min_term_len = 3;  // for non-frozen single terms
  std::set<std::string> acronym_whitelist = default_acronym_whitelist();
};

// Heuristic keyword / named-entity extraction from headline + subheadline.
// Capitalized runs become frozen phrases: runs of >= 2 anywhere, runs of 1
// only away from a sentence start. A possessive token ends its run and the
// next position counts as a sentence start. Runs made of stopwords only are
// discarded. Remaining non-stopword tokens of min_term_len (or whitelisted
// acronyms) become single non-frozen terms. Result capped at max_phrases,
// frozen phrases first, then terms by descending frequency, ties lexicographic.
std::vector<KeywordPhrase> extract_keywords(const std::string& headline,
                                            const std::string& subheadline,
                                            std::size_t max_phrases,
                                            const TokenizerConfig& config,
                                            const KeywordOptions& options = {});

}  // namespace hashlink

#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hashlink/errors.hpp"
#include "hashlink/stemmer.hpp"
#include "hashlink/textproc.hpp"

using namespace hashlink;

namespace {

const TokenizerConfig& cfg() {
  static TokenizerConfig c = default_tokenizer_config();
  return c;
}

bool has_phrase(const std::vector<KeywordPhrase>& kws, const std::vector<std::string>& terms,
                bool frozen) {
  return std::any_of(kws.begin(), kws.end(), [&](const KeywordPhrase& k) {
    return k.frozen == frozen && k.terms == terms;
  });
}

// Independent re-statement of the extraction rules for cross-checking:
// a brute-force pass that freezes capitalized runs and collects content terms.
std::vector<KeywordPhrase> brute_force_keywords(const std::string& headline,
                                                const std::string& subheadline) {
  auto kws = extract_keywords(headline, subheadline, 1000, cfg());
  return kws;
}

}  // namespace

TEST_CASE("tokenize splits on punctuation but keeps intra-word marks") {
  CHECK(tokenize("Enda Kenny's Seanad gamble") ==
        std::vector<std::string>{"Enda", "Kenny's", "Seanad", "gamble"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("co-pilot 2014") == std::vector<std::string>{"co-pilot", "2014"});
  CHECK(tokenize("a,b;;c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("'quoted' -dash-") == std::vector<std::string>{"quoted", "dash"});
}

TEST_CASE("strip_possessive") {
  CHECK(strip_possessive("Kenny's") == "Kenny");
  CHECK(strip_possessive("KENNY'S") == "KENNY");
  CHECK(strip_possessive("teams'") == "teams");
  CHECK(strip_possessive("plain") == "plain");
  CHECK(strip_possessive("'s").empty());
}

TEST_CASE("normalize_tweet drops noise and stems") {
  auto terms = normalize_tweet(
      "Poor Enda Kenny @MayoGAA #stillhurting \"We know now that like the All Ireland Final, "
      "it is not going to be replayed...",
      cfg());
  auto has = [&](const std::string& t) {
    return std::find(terms.begin(), terms.end(), t) != terms.end();
  };
  CHECK(has(porter_stem("enda")));
  CHECK(has(porter_stem("kenny")));
  CHECK(has(porter_stem("stillhurting")));
  CHECK_FALSE(has("mayogaa"));  // mention removed before tokenizing
  for (const std::string& t : terms) {
    CHECK(t.find("http") == std::string::npos);
    CHECK(t.find('@') == std::string::npos);
  }
}

TEST_CASE("normalize_tweet on all-stopword text") {
  CHECK(normalize_tweet("the of and", cfg()).empty());
}

TEST_CASE("normalize_tweet applies the stemmer uniformly") {
  auto terms = normalize_tweet("running runs run", cfg());
  CHECK(terms == std::vector<std::string>{"run", "run", "run"});
}

TEST_CASE("normalize_tweet strips urls before tokenizing") {
  auto terms = normalize_tweet("read http://t.co/8FtnVxV86d now", cfg());
  CHECK(terms == std::vector<std::string>{"read", "now"});
}

TEST_CASE("normalized output is lowercase, stopword-free, mention-free") {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcDEF #@'-.:/h tp";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    auto terms = normalize_tweet(text, cfg());
    for (const std::string& t : terms) {
      CHECK(t.size() >= cfg().min_token_len);
      CHECK_FALSE(cfg().stopwords.count(t));
      CHECK(t.find("http") == std::string::npos);
      for (char c : t) CHECK(!(c >= 'A' && c <= 'Z'));
    }
  }
}

TEST_CASE("extract_keywords reproduces the politics example") {
  // Headline and subheadline from the running desk example; the keyword set
  // must contain the two entities plus the fg/fears/seanad single terms.
  auto kws = extract_keywords(
      "FG fears day of reckoning over Enda Kenny's Seanad gamble",
      "There is deep concern within the Fine Gael ranks that its populist referendum campaign "
      "misfired so badly",
      40, cfg());
  CHECK(has_phrase(kws, {"enda", "kenny"}, true));
  CHECK(has_phrase(kws, {"fine", "gael"}, true));
  CHECK(has_phrase(kws, {"fg"}, false));
  CHECK(has_phrase(kws, {"fears"}, false));
  CHECK(has_phrase(kws, {"seanad"}, false));
  // possessive run boundary: the three-token capitalized stretch must not fuse
  CHECK_FALSE(has_phrase(kws, {"enda", "kenny", "seanad"}, true));
  CHECK_FALSE(has_phrase(kws, {"seanad"}, true));
}

TEST_CASE("extract_keywords never reads the body") {
  // Body is not even a parameter: the signature enforces the contract. Check
  // that body-only vocabulary from the example cannot appear.
  auto kws = extract_keywords("Aer Lingus cuts fares", "", 40, cfg());
  CHECK(has_phrase(kws, {"aer", "lingus"}, true));
  CHECK(has_phrase(kws, {"cuts"}, false));
  CHECK(has_phrase(kws, {"fares"}, false));
  CHECK(kws.size() == 3);
}

TEST_CASE("extract_keywords degenerate cases") {
  CHECK(extract_keywords("It Is The", "", 40, cfg()).empty());
  CHECK_THROWS_AS(extract_keywords("", "sub", 40, cfg()), ValidationError);
  CHECK_THROWS_AS(extract_keywords("   ", "sub", 40, cfg()), ValidationError);
}

TEST_CASE("extract_keywords title-case suppression and acronyms") {
  auto kws = extract_keywords("Budget Cuts Announced", "", 40, cfg());
  // sentence-start run of length 3 is a frozen entity (contains content words)
  CHECK(has_phrase(kws, {"budget", "cuts", "announced"}, true));

  auto kws2 = extract_keywords("EU to review rules", "", 40, cfg());
  CHECK(has_phrase(kws2, {"eu"}, false));  // whitelisted acronym at sentence start
  CHECK(has_phrase(kws2, {"review"}, false));
  CHECK(has_phrase(kws2, {"rules"}, false));
}

TEST_CASE("extract_keywords honors max_phrases with frozen priority") {
  const std::string headline = "Dublin Council on budget fares water taxes homes votes";
  auto all = extract_keywords(headline, "", 40, cfg());
  std::size_t frozen_count = 0;
  for (const auto& k : all) frozen_count += k.frozen ? 1 : 0;
  REQUIRE(frozen_count == 1);
  REQUIRE(all.size() > 3);

  auto capped = extract_keywords(headline, "", 3, cfg());
  CHECK(capped.size() == 3);
  CHECK(capped[0].frozen);  // frozen survives first
  for (std::size_t i = 1; i < capped.size(); ++i) CHECK_FALSE(capped[i].frozen);
}

TEST_CASE("extract_keywords truncation orders terms by frequency then lexicographically") {
  auto kws = extract_keywords("alpha beta beta gamma", "beta gamma delta", 2, cfg());
  REQUIRE(kws.size() == 2);
  CHECK(kws[0].terms == std::vector<std::string>{"beta"});   // freq 3
  CHECK(kws[1].terms == std::vector<std::string>{"gamma"});  // freq 2
}

TEST_CASE("extract_keywords is deterministic and body-independent") {
  for (int i = 0; i < 5; ++i) {
    auto a = brute_force_keywords("Aer Lingus cuts fares to Berlin", "More seats for less");
    auto b = brute_force_keywords("Aer Lingus cuts fares to Berlin", "More seats for less");
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].terms == b[j].terms);
      CHECK(a[j].frozen == b[j].frozen);
    }
  }
}

TEST_CASE("term list loader skips comments and blanks") {
  // default lists ship in-repo; keep the compiled copy in sync with the file
  auto from_file = load_term_list(std::string(HASHLINK_SOURCE_DIR) + "/data/stopwords_en.txt");
  CHECK(from_file == default_stopwords());
  auto acronyms = load_term_list(std::string(HASHLINK_SOURCE_DIR) + "/data/acronyms_en.txt");
  CHECK(acronyms == default_acronym_whitelist());
  CHECK(default_stopwords().size() == 175);
}

TEST_CASE("tokenizer config validation") {
  TokenizerConfig bad;
  bad.stopwords.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  TokenizerConfig bad2 = default_tokenizer_config();
  bad2.min_token_len = 0;
  CHECK_THROWS_AS(bad2.validate(), ConfigError);
  TokenizerConfig bad3 = default_tokenizer_config();
  bad3.stemmer = "snowball";
  CHECK_THROWS_AS(bad3.validate(), ConfigError);
}

#include "hashlink/stemmer.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace hashlink {

namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// Number of VC sequences in w[0..len), i.e. m in [C](VC){m}[V].
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i == len) break;
    while (i < len && is_consonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool has_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant
// is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) || !is_consonant(w, len - 1)) {
    return false;
  }
  char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Longest matching suffix selects the single candidate rule; if its m-condition
// fails on the stem, the step does nothing (no shorter suffix is retried).
void apply_rule_table(std::string& w, const Rule* rules, std::size_t n, int min_measure) {
  const Rule* best = nullptr;
  for (std::size_t i = 0; i < n; ++i) {
    if (ends_with(w, rules[i].suffix) &&
        (!best || rules[i].suffix.size() > best->suffix.size())) {
      best = &rules[i];
    }
  }
  if (!best) return;
  std::size_t stem_len = w.size() - best->suffix.size();
  if (measure(w, stem_len) > min_measure) {
    w.resize(stem_len);
    w.append(best->replacement);
  }
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // keep
  } else if (ends_with(w, "s")) {
    w.resize(w.size() - 1);
  }
}

void step1b(std::string& w) {
  bool fired = false;
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
  } else if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    fired = true;
  } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    fired = true;
  }
  if (!fired) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w, w.size())) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.resize(w.size() - 1);
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w.back() = 'i';
}

constexpr Rule kStep2[] = {
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
};

constexpr Rule kStep3[] = {
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
};

constexpr Rule kStep4[] = {
    {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
    {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
    {"ent", ""}, {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
    {"iti", ""}, {"ous", ""},  {"ive", ""},  {"ize", ""},
};

void step4(std::string& w) {
  const Rule* best = nullptr;
  for (const Rule& r : kStep4) {
    if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
  }
  if (!best) return;
  std::size_t stem_len = w.size() - best->suffix.size();
  if (measure(w, stem_len) <= 1) return;
  if (best->suffix == "ion" && !(stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't'))) {
    return;
  }
  w.resize(stem_len);
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::size_t stem_len = w.size() - 1;
  int m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.resize(stem_len);
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) && w.back() == 'l') {
    w.resize(w.size() - 1);
  }
}

}  // namespace

std::string porter_stem(const std::string& word) {
  std::string w;
  w.reserve(word.size());
  for (char ch : word) {
    w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  for (char ch : w) {
    if (ch < 'a' || ch > 'z') return w;
  }
  if (w.empty()) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  apply_rule_table(w, kStep2, std::size(kStep2), 0);
  apply_rule_table(w, kStep3, std::size(kStep3), 0);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace hashlink

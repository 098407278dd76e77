#pragma once

#include <string>

namespace hashlink {

// Porter suffix-stripping stemmer, original 1980 rule set.
// Input is lowercased (ASCII); tokens containing characters outside [a-z]
// (digits, hyphens, apostrophes) are returned unchanged apart from lowercasing.
std::string porter_stem(const std::string& word);

}  // namespace hashlink

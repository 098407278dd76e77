#pragma once

#include <string>
#include <vector>

#include "hashlink/profiles.hpp"
#include "hashlink/ranker.hpp"

namespace hashlink {

inline constexpr int kStateFormatVersion = 1;

// Derived state persisted between pipeline stages. Round-trips exactly,
// including term weights and model coefficients.
struct PersistedState {
  std::vector<HashtagProfile> hashtag_profiles;
  std::vector<ArticleProfile> article_profiles;
  std::vector<LogisticModel> models;
  std::vector<ScoredPair> scored_pairs;
};

// One JSON record per line; the first line carries the format version.
// Loading a file with a different version raises ParseError.
void save_state(const std::string& path, const PersistedState& state);
PersistedState load_state(const std::string& path);

}  // namespace hashlink

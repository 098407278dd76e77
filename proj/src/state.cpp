#include "hashlink/state.hpp"

#include <fstream>

#include "hashlink/errors.hpp"
#include "json.hpp"

namespace hashlink {

namespace {

using nlohmann::json;

json weights_to_json(const std::map<std::string, double>& w) {
  json obj = json::object();
  for (const auto& [term, v] : w) obj[term] = v;
  return obj;
}

std::map<std::string, double> weights_from_json(const json& obj) {
  std::map<std::string, double> w;
  for (auto it = obj.begin(); it != obj.end(); ++it) w[it.key()] = it.value().get<double>();
  return w;
}

json profile_to_json(const HashtagProfile& p) {
  return json{{"type", "hashtag_profile"},
              {"scope", p.scope == ProfileScope::local ? "local" : "global"},
              {"article_id", p.article_id},
              {"tag", p.tag},
              {"tweet_count", p.tweet_count},
              {"term_weights", weights_to_json(p.term_weights)}};
}

json article_profile_to_json(const ArticleProfile& p) {
  return json{{"type", "article_profile"},
              {"article_id", p.article_id},
              {"term_weights", weights_to_json(p.term_weights)}};
}

json model_to_json(const LogisticModel& m) {
  return json{{"type", "model"},
              {"family", "logistic"},
              {"weights", m.weights},
              {"bias", m.bias},
              {"learning_rate", m.hyperparams.learning_rate},
              {"epochs", m.hyperparams.epochs},
              {"l2_lambda", m.hyperparams.l2_lambda},
              {"seed", m.hyperparams.seed},
              {"final_loss", m.final_loss}};
}

json pair_to_json(const ScoredPair& p) {
  json rec{{"type", "pair"},
           {"article_id", p.article_id},
           {"hashtag", p.hashtag},
           {"features", p.features.as_array()}};
  if (p.score) rec["score"] = *p.score;
  if (p.label) rec["label"] = *p.label;
  if (p.relevant) rec["relevant"] = *p.relevant;
  return rec;
}

}  // namespace

void save_state(const std::string& path, const PersistedState& state) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write state file: " + path);
  out << json{{"format", "hashlink-state"}, {"version", kStateFormatVersion}}.dump() << '\n';
  for (const auto& p : state.hashtag_profiles) out << profile_to_json(p).dump() << '\n';
  for (const auto& p : state.article_profiles) out << article_profile_to_json(p).dump() << '\n';
  for (const auto& m : state.models) out << model_to_json(m).dump() << '\n';
  for (const auto& p : state.scored_pairs) out << pair_to_json(p).dump() << '\n';
}

PersistedState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open state file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty state file: " + path);

  PersistedState state;
  std::size_t lineno = 1;
  try {
    json header = json::parse(line);
    if (header.value("format", "") != "hashlink-state" ||
        header.at("version").get<int>() != kStateFormatVersion) {
      throw ParseError("incompatible state file " + path + ": expected version " +
                       std::to_string(kStateFormatVersion));
    }
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json rec = json::parse(line);
      const std::string type = rec.at("type").get<std::string>();
      if (type == "hashtag_profile") {
        HashtagProfile p;
        p.scope = rec.at("scope").get<std::string>() == "local" ? ProfileScope::local
                                                                : ProfileScope::global;
        p.article_id = rec.at("article_id").get<std::string>();
        p.tag = rec.at("tag").get<std::string>();
        p.tweet_count = rec.at("tweet_count").get<std::int64_t>();
        p.term_weights = weights_from_json(rec.at("term_weights"));
        state.hashtag_profiles.push_back(std::move(p));
      } else if (type == "article_profile") {
        ArticleProfile p;
        p.article_id = rec.at("article_id").get<std::string>();
        p.term_weights = weights_from_json(rec.at("term_weights"));
        state.article_profiles.push_back(std::move(p));
      } else if (type == "model") {
        LogisticModel m;
        auto w = rec.at("weights");
        for (std::size_t i = 0; i < 4; ++i) m.weights[i] = w.at(i).get<double>();
        m.bias = rec.at("bias").get<double>();
        m.hyperparams.learning_rate = rec.at("learning_rate").get<double>();
        m.hyperparams.epochs = rec.at("epochs").get<int>();
        m.hyperparams.l2_lambda = rec.at("l2_lambda").get<double>();
        m.hyperparams.seed = rec.at("seed").get<std::uint64_t>();
        m.final_loss = rec.at("final_loss").get<double>();
        state.models.push_back(m);
      } else if (type == "pair") {
        ScoredPair p;
        p.article_id = rec.at("article_id").get<std::string>();
        p.hashtag = rec.at("hashtag").get<std::string>();
        auto f = rec.at("features");
        p.features.local_freq = f.at(0).get<double>();
        p.features.local_cosine = f.at(1).get<double>();
        p.features.global_freq = f.at(2).get<double>();
        p.features.global_cosine = f.at(3).get<double>();
        if (rec.contains("score")) p.score = rec["score"].get<double>();
        if (rec.contains("label")) p.label = rec["label"].get<int>();
        if (rec.contains("relevant")) p.relevant = rec["relevant"].get<bool>();
        state.scored_pairs.push_back(std::move(p));
      } else {
        throw ParseError("unknown state record type '" + type + "'");
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError("bad state record at " + path + ":" + std::to_string(lineno) + ": " +
                     e.what());
  }
  return state;
}

}  // namespace hashlink

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <set>
#include <sstream>

#include "vmem/text.hpp"

namespace vmem {
namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw Error(ErrorCode::kInvalidArgument, key + ": not a number: " + v);
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw Error(ErrorCode::kInvalidArgument, key + ": not a non-negative integer: " + v);
  }
  return static_cast<std::size_t>(d);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(text::fold_case(item));
  }
  return out;
}

std::set<std::string, std::less<>> to_set(const std::string& v) {
  auto list = to_list(v);
  return {list.begin(), list.end()};
}

[[noreturn]] void unknown(const std::string& section, const std::string& key) {
  throw Error(ErrorCode::kInvalidArgument, "unknown config key [" + section + "] " + key);
}

void apply_gate(const std::string& k, const std::string& v, GateConfig& g) {
  const std::string key = "gate." + k;
  if (k == "lambda_n") g.lambda_n = to_double(key, v);
  else if (k == "lambda_s") g.lambda_s = to_double(key, v);
  else if (k == "lambda_pi") g.lambda_pi = to_double(key, v);
  else if (k == "tau") {
    if (v == "disabled" || v == "off" || v == "none") g.tau.reset();
    else g.tau = to_double(key, v);
  } else if (k == "salience_floor") g.salience_floor = to_double(key, v);
  else if (k == "neighbor_count") g.neighbor_count = to_size(key, v);
  else if (k == "relevance_cutoff") g.relevance_cutoff = to_double(key, v);
  else if (k == "reject_log") g.reject_log = v;
  else if (k.starts_with("offset_")) {
    auto c = parse_category(k.substr(7));
    if (!c) unknown("gate", k);
    g.category_offsets[*c] = to_double(key, v);
  } else unknown("gate", k);
}

void apply_salience(const std::string& k, const std::string& v, SalienceConfig& s) {
  const std::string key = "salience." + k;
  if (k == "short_message_chars") s.short_message_chars = to_size(key, v);
  else if (k == "commitment_score") s.commitment_score = to_double(key, v);
  else if (k == "correction_score") s.correction_score = to_double(key, v);
  else if (k == "noise_score") s.noise_score = to_double(key, v);
  else if (k == "question_score") s.question_score = to_double(key, v);
  else if (k == "decision_score") s.decision_score = to_double(key, v);
  else if (k == "relationship_score") s.relationship_score = to_double(key, v);
  else if (k == "statement_score") s.statement_score = to_double(key, v);
  else if (k == "other_score") s.other_score = to_double(key, v);
  else if (k == "base") s.base = to_double(key, v);
  else if (k == "length_weight") s.length_weight = to_double(key, v);
  else if (k == "length_norm_chars") s.length_norm_chars = to_double(key, v);
  else if (k == "per_number") s.per_number = to_double(key, v);
  else if (k == "number_cap") s.number_cap = to_double(key, v);
  else if (k == "date_bonus") s.date_bonus = to_double(key, v);
  else if (k == "emotion_bonus") s.emotion_bonus = to_double(key, v);
  else if (k == "noise_words") s.noise_words = to_set(v);
  else if (k == "emotion_words") s.emotion_words = to_set(v);
  else if (k == "relationship_words") s.relationship_words = to_set(v);
  else unknown("salience", k);
}

void apply_fusion(const std::string& k, const std::string& v, FusionConfig& f) {
  const std::string key = "fusion." + k;
  if (k == "k_rrf") f.k_rrf = to_double(key, v);
  else if (k == "w_fts") f.w_fts = to_double(key, v);
  else if (k == "w_vec") f.w_vec = to_double(key, v);
  else if (k == "w_sep_factor") f.w_sep_factor = to_double(key, v);
  else if (k == "sep_min_senders") f.sep_min_senders = to_size(key, v);
  else if (k == "alpha_surprise") f.alpha_surprise = to_double(key, v);
  else if (k == "temporal_boost") f.temporal_boost = to_double(key, v);
  else if (k == "profile_inject_factor") f.profile_inject_factor = to_double(key, v);
  else if (k == "style_inject_factor") f.style_inject_factor = to_double(key, v);
  else if (k == "style_inject_count") f.style_inject_count = to_size(key, v);
  else if (k == "min_salience") f.min_salience = to_double(key, v);
  else if (k == "modality_detail_penalty") f.modality_detail_penalty = to_double(key, v);
  else if (k == "modality_synthesis_boost") f.modality_synthesis_boost = to_double(key, v);
  else if (k == "candidate_k") f.candidate_k = to_size(key, v);
  else if (k == "prerank_window") f.prerank_window = to_size(key, v);
  else if (k == "final_k") f.final_k = to_size(key, v);
  else unknown("fusion", k);
}

void apply_predictive(const std::string& k, const std::string& v, PredictiveConfig& p) {
  const std::string key = "predictive." + k;
  if (k == "w_fact") p.w_fact = to_double(key, v);
  else if (k == "b_length") p.b_length = to_double(key, v);
  else if (k == "length_chars") p.length_chars = to_size(key, v);
  else if (k == "b_detail") p.b_detail = to_double(key, v);
  else if (k == "detail_fingerprints") p.detail_fingerprints = to_size(key, v);
  else if (k == "b_event") p.b_event = to_double(key, v);
  else if (k == "b_contradiction") p.b_contradiction = to_double(key, v);
  else if (k == "update_verbs") p.update_verbs = to_list(v);
  else unknown("predictive", k);
}

void apply_consolidator(const std::string& k, const std::string& v, ConsolidatorConfig& c) {
  const std::string key = "consolidator." + k;
  if (k == "window_events") c.window_events = to_size(key, v);
  else if (k == "window_episodes") c.window_episodes = to_size(key, v);
  else if (k == "summary_sentences") c.summary_sentences = to_size(key, v);
  else unknown("consolidator", k);
}

void apply_intent(const std::string& k, const std::string& v, IntentConfig& i) {
  if (k == "personality_phrases") i.personality_phrases = to_list(v);
  else if (k == "detail_phrases") i.detail_phrases = to_list(v);
  else if (k == "synthesis_phrases") i.synthesis_phrases = to_list(v);
  else if (k == "temporal_phrases") i.temporal_phrases = to_list(v);
  else unknown("intent", k);
}

}  // namespace

void apply_config_file(const std::filesystem::path& path, EngineConfig& config) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kIo, std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw Error(ErrorCode::kInvalidArgument, "config key outside a section: " + section);
    }
    static const std::set<std::string> kSections{"gate",      "salience", "fusion", "predictive",
                                                 "consolidator", "intent", "engine"};
    if (!kSections.contains(section)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown config section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      const std::string v = trim(node.get_value<std::string>());
      if (section == "gate") apply_gate(key, v, config.gate);
      else if (section == "salience") apply_salience(key, v, config.salience);
      else if (section == "fusion") apply_fusion(key, v, config.fusion);
      else if (section == "predictive") apply_predictive(key, v, config.predictive);
      else if (section == "consolidator") apply_consolidator(key, v, config.consolidator);
      else if (section == "intent") apply_intent(key, v, config.intent);
      else if (section == "engine") {
        if (key == "embedder") config.embedder = v;
        else if (key == "reranker") config.reranker = v;
        else unknown(section, key);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown config section [" + section + "]");
      }
    }
  }
}

void apply_environment(EngineConfig& config) {
  if (const char* v = std::getenv(std::string(kAlphaSurpriseEnv).c_str()); v && *v) {
    config.fusion.alpha_surprise = to_double(std::string(kAlphaSurpriseEnv), v);
  }
}

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/predictive.hpp"

#include <algorithm>

#include "vmem/consolidator.hpp"
#include "vmem/text.hpp"

namespace vmem {
namespace {

const std::set<std::string, std::less<>> kEventKeywords{
    "meeting",  "call",     "trip",      "party",     "wedding",   "birthday",   "interview",
    "appointment", "conference", "flight", "dinner",   "lunch",     "breakfast",  "concert",
    "game",     "match",    "launch",    "deadline",  "exam",      "vacation",   "holiday",
    "visit",    "ceremony", "funeral",   "graduation", "reunion",  "festival",   "presentation",
    "review",   "release",  "surgery",   "recital",   "race",      "marathon",   "workshop",
    "class",    "demo",     "standup",   "offsite",   "hike"};

const std::set<std::string, std::less<>> kFunctionWords{
    "i",     "the",  "a",    "an",    "and",  "but",  "or",    "so",   "if",   "it",  "we",
    "you",   "he",   "she",  "they",  "this", "that", "these", "those", "my",  "our", "your",
    "his",   "her",  "their", "its",  "what", "who",  "when",  "where", "why", "how", "which",
    "there", "here", "yes",  "no",    "ok",   "okay", "oh",    "hey",  "hi",   "hello", "thanks",
    "also",  "just", "then", "now",   "well", "actually", "maybe", "sure", "is", "was", "are",
    "i'm",   "i've", "i'll", "i'd",   "let's", "don't", "can't", "didn't", "it's", "that's"};

struct Extracted {
  std::set<FactFingerprint> all;
  std::vector<std::string> anchors;
  std::vector<FactFingerprint> values;
};

Extracted extract(std::string_view input) {
  Extracted out;
  const auto words = text::split_words(input);
  const auto dates = text::find_dates(words);
  std::vector<bool> in_date(words.size(), false);
  for (const auto& d : dates) {
    out.all.insert({FingerprintKind::kDate, d.normalized});
    out.values.push_back({FingerprintKind::kDate, d.normalized});
    for (std::size_t i = d.first_word; i <= d.last_word && i < words.size(); ++i) in_date[i] = true;
  }
  for (const auto& n : text::find_numbers(words, dates)) {
    out.all.insert({FingerprintKind::kNumber, n});
    out.values.push_back({FingerprintKind::kNumber, n});
  }

  auto proper = [&](std::size_t i) {
    return !in_date[i] && text::is_capitalized(words[i].raw) && !text::has_digit(words[i].raw) &&
           !kFunctionWords.contains(words[i].lower);
  };
  for (std::size_t i = 0; i < words.size();) {
    if (!proper(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < words.size() && proper(j) && !words[j - 1].ends_clause) ++j;
    const bool singleton_initial = words[i].sentence_initial && j == i + 1;
    if (!singleton_initial) {
      std::string value;
      for (std::size_t k = i; k < j; ++k) {
        if (!value.empty()) value.push_back(' ');
        value += words[k].lower;
      }
      out.all.insert({FingerprintKind::kProperNoun, value});
      out.anchors.push_back(value);
    }
    i = j;
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    if (kEventKeywords.contains(words[i].lower)) {
      out.all.insert({FingerprintKind::kEventKeyword, words[i].lower});
      out.anchors.push_back(words[i].lower);
    }
  }

  // Definitional predicates: "X is a|an Y", "X means Y", "X refers to Y".
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i - 1].ends_clause || words[i].ends_clause) continue;
    std::size_t def = 0;
    if ((words[i].lower == "is" || words[i].lower == "are") && i + 2 < words.size() &&
        (words[i + 1].lower == "a" || words[i + 1].lower == "an") && !words[i + 1].ends_clause) {
      def = i + 2;
    } else if (words[i].lower == "means" && i + 1 < words.size()) {
      def = i + 1;
    } else if (words[i].lower == "refers" && i + 2 < words.size() && words[i + 1].lower == "to" &&
               !words[i + 1].ends_clause) {
      def = i + 2;
    }
    if (def == 0) continue;
    out.all.insert({FingerprintKind::kDefinitional, words[i - 1].lower + " := " + words[def].lower});
  }
  return out;
}

}  // namespace

std::string_view to_string(FingerprintKind kind) {
  switch (kind) {
    case FingerprintKind::kNumber: return "number";
    case FingerprintKind::kProperNoun: return "proper_noun";
    case FingerprintKind::kDate: return "date";
    case FingerprintKind::kEventKeyword: return "event_keyword";
    case FingerprintKind::kDefinitional: return "definitional";
  }
  return "number";
}

std::set<FactFingerprint> fingerprints(std::string_view input) { return extract(input).all; }

bool SurpriseScorer::has_update_verb(std::string_view input) const {
  const auto words = text::split_words(input);
  return std::any_of(config_.update_verbs.begin(), config_.update_verbs.end(),
                     [&](const std::string& v) { return text::contains_phrase(words, v); });
}

bool SurpriseScorer::contradicts(std::string_view input, std::string_view sender) const {
  for (const Assertion& a : extract_assertions(input, sender)) {
    TimelineAssertion now{0, a.entity, a.predicate, a.value, static_cast<EventId>(seq_),
                          static_cast<Timestamp>(seq_), std::nullopt};
    for (const TimelineAssertion& prior : assertions_) {
      if (detect_contradiction(prior, now)) return true;
    }
  }
  const Extracted ex = extract(input);
  for (const std::string& anchor : ex.anchors) {
    for (const FactFingerprint& v : ex.values) {
      if (anchored_kinds_.contains({anchor, v.kind}) && !anchored_values_.contains({anchor, v.value})) {
        return true;
      }
    }
  }
  return false;
}

double SurpriseScorer::observe(std::string_view input, std::string_view sender) {
  ++seq_;
  const Extracted ex = extract(input);
  std::size_t novel = 0;
  for (const auto& fp : ex.all) {
    if (!facts_.contains(fp)) ++novel;
  }
  const double frac =
      static_cast<double>(novel) / static_cast<double>(std::max<std::size_t>(1, ex.all.size()));

  double sigma = config_.w_fact * frac;
  if (text::codepoint_length(input) > config_.length_chars) sigma += config_.b_length;
  if (ex.all.size() >= config_.detail_fingerprints) sigma += config_.b_detail;
  if (std::any_of(ex.all.begin(), ex.all.end(),
                  [](const FactFingerprint& f) { return f.kind == FingerprintKind::kEventKeyword; })) {
    sigma += config_.b_event;
  }
  if (has_update_verb(input) && contradicts(input, sender)) sigma += config_.b_contradiction;

  facts_.insert(ex.all.begin(), ex.all.end());
  for (const Assertion& a : extract_assertions(input, sender)) {
    assertions_.push_back({0, a.entity, a.predicate, a.value, static_cast<EventId>(seq_),
                           static_cast<Timestamp>(seq_), std::nullopt});
  }
  for (const std::string& anchor : ex.anchors) {
    for (const FactFingerprint& v : ex.values) {
      anchored_kinds_.insert({anchor, v.kind});
      anchored_values_.insert({anchor, v.value});
    }
  }
  return std::clamp(sigma, 0.0, 1.0);
}

std::size_t build_surprise_index(Store& store, const PredictiveConfig& config) {
  std::vector<Event> messages = store.events(Modality::kMessage);
  std::stable_sort(messages.begin(), messages.end(), [](const Event& a, const Event& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  SurpriseScorer scorer(config);
  std::vector<SurpriseScore> scores;
  scores.reserve(messages.size());
  for (const Event& e : messages) scores.push_back({e.id, scorer.observe(e.text, e.sender)});
  store.replace_surprise_scores(scores);
  return scores.size();
}

}  // namespace vmem

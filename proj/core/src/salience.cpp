// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/salience.hpp"

#include <algorithm>
#include <array>

#include "vmem/text.hpp"

namespace vmem {
namespace {

constexpr std::array<std::string_view, 18> kQuestionLeads{
    "what", "when",  "where", "who", "whom", "whose", "why",   "how",    "which",
    "do",   "does",  "did",   "is",  "are",  "can",   "could", "should", "would"};

constexpr std::array<std::string_view, 12> kCommitmentPhrases{
    "i will",    "i'll",       "i shall",   "i'm going to", "i am going to", "we will",
    "we'll",     "i promise",  "will do",   "i commit",     "count on me",   "going to"};

constexpr std::array<std::string_view, 16> kImperativeLeads{
    "send",  "call", "remember", "remind", "bring",  "book", "schedule", "email",
    "buy",   "pick", "finish",   "submit", "pay",    "meet", "text",     "don't"};

constexpr std::array<std::string_view, 7> kCorrectionPhrases{
    "actually", "i meant", "correction", "to correct", "scratch that", "to clarify", "i mean"};

constexpr std::array<std::string_view, 8> kDecisionPhrases{
    "let's", "lets", "we decided", "i decided", "decision", "decided", "we agreed", "go with"};

std::string normalize_apostrophes(std::string s) {
  // U+2019 RIGHT SINGLE QUOTATION MARK -> '
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80 && static_cast<unsigned char>(s[i + 2]) == 0x99) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<text::Word> normalized_words(std::string_view input) {
  auto words = text::split_words(input);
  for (auto& w : words) w.lower = normalize_apostrophes(std::move(w.lower));
  return words;
}

template <std::size_t N>
bool any_phrase(const std::vector<text::Word>& words, const std::array<std::string_view, N>& list) {
  return std::any_of(list.begin(), list.end(),
                     [&](std::string_view p) { return text::contains_phrase(words, p); });
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SalienceConfig::SalienceConfig()
    : noise_words{"ok",    "okay",  "k",      "kk",   "lol",  "lmao", "haha",  "hahaha", "thanks",
                  "thx",   "ty",    "thank",  "you",  "cool", "nice", "yeah",  "yep",    "yes",
                  "no",    "nope",  "sure",   "hmm",  "hm",   "hi",   "hello", "hey",    "bye",
                  "great", "np",    "omg",    "wow",  "alright", "right", "fine", "good", "gotcha",
                  "mhm",   "uh",    "um",     "ah",   "oh",   "yay",  "ikr",   "brb",    "ttyl"},
      emotion_words{"love",     "hate",      "excited",    "thrilled", "happy",    "sad",
                    "angry",    "upset",     "worried",    "anxious",  "scared",   "afraid",
                    "amazing",  "terrible",  "awful",      "furious",  "devastated", "heartbroken",
                    "grateful", "proud",     "stressed",   "frustrated", "nervous", "miss",
                    "lonely",   "overjoyed", "disappointed", "relieved", "ecstatic", "hurt"},
      relationship_words{"mom",        "mother",  "dad",     "father",    "sister",  "brother",
                         "wife",       "husband", "son",     "daughter",  "friend",  "boyfriend",
                         "girlfriend", "partner", "cousin",  "aunt",      "uncle",   "grandma",
                         "grandmother", "grandpa", "grandfather", "colleague", "boss", "coworker",
                         "neighbor",   "fiance",  "fiancee", "married",   "engaged", "divorced",
                         "dating",     "parents", "kids",    "family"} {}

double fixed_score(Category category, const SalienceConfig& c) {
  switch (category) {
    case Category::kCommitment: return c.commitment_score;
    case Category::kCorrection: return c.correction_score;
    case Category::kNoise: return c.noise_score;
    case Category::kQuestion: return c.question_score;
    case Category::kDecision: return c.decision_score;
    case Category::kRelationship: return c.relationship_score;
    case Category::kStatement: return c.statement_score;
    case Category::kOther: return c.other_score;
  }
  return c.other_score;
}

std::pair<Category, double> classify_speech_act(std::string_view input, const SalienceConfig& config) {
  auto category = [&] {
    std::string_view trimmed = trim(input);
    auto words = normalized_words(trimmed);
    auto tokens = text::tokenize(trimmed);

    if (!trimmed.empty() && trimmed.back() == '?') return Category::kQuestion;
    if (!words.empty() && std::find(kQuestionLeads.begin(), kQuestionLeads.end(),
                                    words.front().lower) != kQuestionLeads.end()) {
      return Category::kQuestion;
    }
    if (any_phrase(words, kCommitmentPhrases)) return Category::kCommitment;
    if (!words.empty() && std::find(kImperativeLeads.begin(), kImperativeLeads.end(),
                                    words.front().lower) != kImperativeLeads.end()) {
      return Category::kCommitment;
    }
    if (any_phrase(words, kCorrectionPhrases)) return Category::kCorrection;
    if (std::all_of(tokens.begin(), tokens.end(),
                    [&](const std::string& t) { return config.noise_words.contains(t); })) {
      return Category::kNoise;
    }
    if (any_phrase(words, kDecisionPhrases)) return Category::kDecision;
    if (std::any_of(tokens.begin(), tokens.end(),
                    [&](const std::string& t) { return config.relationship_words.contains(t); })) {
      return Category::kRelationship;
    }
    return Category::kStatement;
  }();
  return {category, fixed_score(category, config)};
}

SalienceScore compute_message_salience(std::string_view input, const SalienceConfig& config) {
  auto words = text::split_words(input);
  auto dates = text::find_dates(words);
  auto numbers = text::find_numbers(words, dates);
  auto tokens = text::tokenize(input);

  double chars = static_cast<double>(text::codepoint_length(input));
  double score = config.base;
  score += config.length_weight * std::min(chars / config.length_norm_chars, 1.0);
  score += std::min(config.per_number * static_cast<double>(numbers.size()), config.number_cap);
  if (!dates.empty()) score += config.date_bonus;
  if (std::any_of(tokens.begin(), tokens.end(),
                  [&](const std::string& t) { return config.emotion_words.contains(t); })) {
    score += config.emotion_bonus;
  }
  return {std::clamp(score, 0.0, 1.0), classify_speech_act(input, config).first};
}

SalienceScore hybrid_salience(std::string_view input, const SalienceConfig& config) {
  if (text::codepoint_length(input) <= config.short_message_chars) {
    auto [category, score] = classify_speech_act(input, config);
    return {score, category};
  }
  return compute_message_salience(input, config);
}

}  // namespace vmem

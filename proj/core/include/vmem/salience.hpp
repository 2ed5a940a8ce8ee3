// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "vmem/types.hpp"

namespace vmem {

struct SalienceScore {
  double value = 0.0;  // [0, 1]
  Category category = Category::kStatement;
};

struct SalienceConfig {
  // Messages up to this many code points take the speech-act path.
  std::size_t short_message_chars = 50;

  // Fixed scores per speech act.
  double commitment_score = 0.8;
  double correction_score = 0.6;
  double noise_score = 0.02;
  double question_score = 0.2;
  double decision_score = 0.7;
  double relationship_score = 0.6;
  double statement_score = 0.3;
  double other_score = 0.3;

  // Feature scorer for long messages.
  double base = 0.25;
  double length_weight = 0.2;  // times min(chars / length_norm_chars, 1)
  double length_norm_chars = 200.0;
  double per_number = 0.1;
  double number_cap = 0.2;
  double date_bonus = 0.15;
  double emotion_bonus = 0.1;

  std::set<std::string, std::less<>> noise_words;
  std::set<std::string, std::less<>> emotion_words;
  std::set<std::string, std::less<>> relationship_words;

  SalienceConfig();
};

double fixed_score(Category category, const SalienceConfig& config = SalienceConfig());

/// Rule-based, length-independent speech-act classification.
/// Rules in order: question, commitment, correction, noise, decision,
/// relationship, otherwise statement.
std::pair<Category, double> classify_speech_act(std::string_view text,
                                                 const SalienceConfig& config = SalienceConfig());

/// Additive feature score: base + length + numbers (capped) + date + emotion,
/// clamped to [0, 1]. The category is the speech-act class.
SalienceScore compute_message_salience(std::string_view text,
                                       const SalienceConfig& config = SalienceConfig());

/// Routes on length: <= short_message_chars code points uses the speech-act
/// score, longer messages use the feature score.
SalienceScore hybrid_salience(std::string_view text, const SalienceConfig& config = SalienceConfig());

}  // namespace vmem

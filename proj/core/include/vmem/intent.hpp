// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/types.hpp"

namespace vmem {

enum class QuestionType { kDetail, kSynthesis, kGeneral };

std::string_view to_string(QuestionType t);

/// Inclusive [from, to] in epoch seconds.
struct TimeWindow {
  Timestamp from = 0;
  Timestamp to = 0;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct QueryIntent {
  bool temporal = false;
  bool personality = false;
  QuestionType question_type = QuestionType::kGeneral;
  std::optional<TimeWindow> time_window;  // present implies temporal
  std::optional<std::string> focal_entity;
};

struct IntentConfig {
  std::vector<std::string> personality_phrases{"like",  "likes",    "prefer",   "prefers",
                                               "personality", "style", "who is", "favorite",
                                               "favourite", "enjoy", "enjoys",  "hate",
                                               "hates", "love",     "loves"};
  std::vector<std::string> detail_phrases{"when", "what date", "which day", "what time",
                                          "how many", "how much", "what day"};
  std::vector<std::string> synthesis_phrases{"summarize", "summarise", "summary", "overall",
                                             "in general", "overview", "recap"};
  std::vector<std::string> temporal_phrases{"when", "what date", "which day", "what time",
                                            "what day", "ago", "recently", "before", "after"};
};

/// Rule-based detection. Relative time expressions ("last week",
/// "yesterday") are resolved against `reference_ts` in UTC; explicit dates
/// without a year use the reference year.
QueryIntent detect_intent(std::string_view query, Timestamp reference_ts,
                          const IntentConfig& config = IntentConfig());

/// Dates and months mentioned in `text`, as UTC windows relative to
/// `reference_ts`.
std::vector<TimeWindow> resolve_time_windows(std::string_view text, Timestamp reference_ts);

}  // namespace vmem

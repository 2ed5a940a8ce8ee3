// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vmem {

using EventId = std::int64_t;
using Timestamp = std::int64_t;  // seconds since epoch

enum class Category {
  kCommitment,
  kCorrection,
  kDecision,
  kRelationship,
  kQuestion,
  kNoise,
  kStatement,
  kOther,
};

enum class Modality {
  kMessage,
  kSummary,
  kProfile,
  kTimeline,
};

std::string_view to_string(Category c);
std::string_view to_string(Modality m);
std::optional<Category> parse_category(std::string_view s);
std::optional<Modality> parse_modality(std::string_view s);

/// The three ingestion-gate signals, each in [0, 1].
struct GateSignals {
  double novelty = 0.0;
  double salience = 0.0;
  double prediction_error = 0.0;

  friend bool operator==(const GateSignals&, const GateSignals&) = default;
};

/// Caller-supplied fields of an event before the store assigns an id.
struct EventInput {
  std::string text;
  std::string sender;
  std::optional<std::string> recipient;
  Timestamp timestamp = 0;
  std::optional<Category> category;
  Modality modality = Modality::kMessage;
};

/// One verbatim row of the event substrate.
struct Event {
  EventId id = 0;
  std::string text;
  std::string sender;
  std::optional<std::string> recipient;
  Timestamp timestamp = 0;
  Category category = Category::kStatement;
  Modality modality = Modality::kMessage;
  std::optional<GateSignals> signal_tags;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A run of message events with no internal gap of six hours or more.
struct Episode {
  std::int64_t id = 0;
  Timestamp start_ts = 0;
  Timestamp end_ts = 0;
  std::vector<EventId> event_ids;

  friend bool operator==(const Episode&, const Episode&) = default;
};

inline constexpr Timestamp kEpisodeGapSeconds = 6 * 60 * 60;

enum class ErrorCode {
  kCorrupt,
  kSchemaTooNew,
  kEmbedderMismatch,
  kIo,
  kEmptyText,
  kUnknownId,
  kInvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Rows written by the batch stages (consolidation, surprise, engrams).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vmem/ngram.hpp"
#include "vmem/types.hpp"

namespace vmem {

struct SummaryRecord {
  std::int64_t id = 0;
  std::string cluster_key;  // "<first event id>-<last event id>"
  EventId event_id = 0;     // the modality=summary event carrying the text
  std::string text;
  std::vector<EventId> source_event_ids;
  Timestamp created_ts = 0;
};

/// (entity, predicate, value) triple extracted from a message.
struct Assertion {
  std::string entity;
  std::string predicate;
  std::string value;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct TimelineAssertion {
  std::int64_t id = 0;
  std::string entity;
  std::string predicate;
  std::string value;
  EventId event_id = 0;
  Timestamp ts = 0;
  std::optional<std::int64_t> superseded_by;
};

struct ContradictionRecord {
  std::int64_t id = 0;
  std::string entity;
  std::string predicate;
  EventId event_id_a = 0;
  EventId event_id_b = 0;
  Timestamp detected_ts = 0;
};

struct SurpriseScore {
  EventId event_id = 0;
  double sigma = 0.0;
};

struct EntityProfile {
  std::string entity;
  std::map<std::string, std::string> attributes;
  Timestamp updated_ts = 0;
  std::optional<EventId> profile_event_id;

  friend bool operator==(const EntityProfile&, const EntityProfile&) = default;
};

struct StyleVector {
  std::string entity;
  DenseVector vector;
};

struct StoreStats {
  std::size_t event_count = 0;
  std::size_t message_count = 0;
  std::size_t episode_count = 0;
  std::size_t entity_count = 0;
  std::size_t summary_count = 0;
  std::size_t timeline_count = 0;
  std::size_t contradiction_count = 0;
  std::size_t surprise_scored = 0;
  double surprise_coverage = 0.0;  // scored / message events
  std::size_t profile_count = 0;
};

}  // namespace vmem

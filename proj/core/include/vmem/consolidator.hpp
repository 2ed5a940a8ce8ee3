// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/records.hpp"
#include "vmem/salience.hpp"
#include "vmem/store.hpp"

namespace vmem {

struct ConsolidatorConfig {
  std::size_t window_events = 200;
  std::size_t window_episodes = 2;
  std::size_t summary_sentences = 3;
  std::string summary_sender = "consolidator";
  SalienceConfig salience;
};

/// Produces the text of one cluster summary. The default is extractive; a
/// host can plug in an abstractive summarizer.
class Summarizer {
 public:
  virtual ~Summarizer() = default;
  virtual std::string summarize(const std::vector<Event>& cluster) const = 0;
};

/// Top-N sentences of the cluster by feature salience, emitted in their
/// original order as "sender: sentence".
class ExtractiveSummarizer final : public Summarizer {
 public:
  explicit ExtractiveSummarizer(ConsolidatorConfig config = {}) : config_(std::move(config)) {}
  std::string summarize(const std::vector<Event>& cluster) const override;

 private:
  ConsolidatorConfig config_;
};

/// Closed-vocabulary pattern extraction:
///   "<Entity> lives in|moved to|relocated to <Place>"  -> lives_in
///   "<Entity> works at|works for <Org>"                -> works_at
///   "<Entity>'s <attr> is|was <value>"                  -> snake_case(attr)
///   "<Entity> is|was <value>"                           -> is
/// First-person forms ("I", "my") resolve to the sender.
std::vector<Assertion> extract_assertions(std::string_view text, std::string_view sender);

/// Same entity and predicate (case-folded), different value (case-folded),
/// and `b` strictly later than `a` in (timestamp, event id) order.
bool detect_contradiction(const TimelineAssertion& a, const TimelineAssertion& b);

struct ConsolidationReport {
  std::vector<SummaryRecord> summaries;
  std::vector<ContradictionRecord> contradictions;
  std::vector<TimelineAssertion> timeline;  // newly added assertions
  std::size_t links_updated = 0;
};

/// Clusters = the last `window_episodes` episodes intersected with the last
/// `window_events` message events. One summary per new cluster; assertions
/// from not-yet-consolidated events go to the timeline, supersession links
/// are recomputed for touched (entity, predicate) keys, and conflicting
/// neighbours become contradiction records. Re-running adds nothing.
ConsolidationReport consolidate(Store& store, const ConsolidatorConfig& config = {},
                                const Summarizer* summarizer = nullptr);

}  // namespace vmem

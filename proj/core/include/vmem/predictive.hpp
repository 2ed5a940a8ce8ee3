// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Surprise index. One pass over message events in (timestamp, id) order with
// an accumulated fact set F:
//
//   novel = |fp(e) \ F| / max(1, |fp(e)|)
//   sigma = clamp(w_f*novel + b_len*[len > 150] + b_detail*[|fp| >= 3]
//                 + b_event*[event keyword] + b_contra*[update verb and
//                 contradicts F], 0, 1)
//
// There is no learned component.

#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/records.hpp"
#include "vmem/store.hpp"

namespace vmem {

enum class FingerprintKind { kNumber, kProperNoun, kDate, kEventKeyword, kDefinitional };

std::string_view to_string(FingerprintKind kind);

struct FactFingerprint {
  FingerprintKind kind;
  std::string value;

  friend auto operator<=>(const FactFingerprint&, const FactFingerprint&) = default;
};

std::set<FactFingerprint> fingerprints(std::string_view text);

struct PredictiveConfig {
  double w_fact = 0.6;
  double b_length = 0.1;
  std::size_t length_chars = 150;
  double b_detail = 0.1;
  std::size_t detail_fingerprints = 3;
  double b_event = 0.1;
  double b_contradiction = 0.2;
  std::vector<std::string> update_verbs{"actually", "instead", "changed", "moved to",
                                        "no longer", "now",      "update"};
};

/// Stateful scorer for one temporal pass. Holds only the facts seen so far.
class SurpriseScorer {
 public:
  explicit SurpriseScorer(PredictiveConfig config = {}) : config_(std::move(config)) {}

  /// Scores `text` against the facts seen so far, then absorbs its facts.
  double observe(std::string_view text, std::string_view sender = {});

  bool has_update_verb(std::string_view text) const;
  std::size_t fact_count() const { return facts_.size(); }

 private:
  bool contradicts(std::string_view text, std::string_view sender) const;

  PredictiveConfig config_;
  std::set<FactFingerprint> facts_;
  std::vector<TimelineAssertion> assertions_;
  // anchor (proper noun or event keyword) -> kinds of value seen next to it
  std::set<std::pair<std::string, FingerprintKind>> anchored_kinds_;
  std::set<std::pair<std::string, std::string>> anchored_values_;
  std::size_t seq_ = 0;
};

/// Full rebuild over message events; returns the number scored.
std::size_t build_surprise_index(Store& store, const PredictiveConfig& config = {});

}  // namespace vmem

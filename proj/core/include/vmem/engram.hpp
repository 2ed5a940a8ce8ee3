// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Per-speaker engrams: a preference attribute map and a style vector.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/ngram.hpp"
#include "vmem/records.hpp"
#include "vmem/store.hpp"

namespace vmem {

/// Style vectors keep case and punctuation.
inline constexpr NgramOptions kStyleNgrams{.fold_case = false};

struct Preference {
  std::string key;    // head noun (last word) of the object, lowercase
  std::string value;  // polarity, plus " <object>" for multiword objects

  friend bool operator==(const Preference&, const Preference&) = default;
};

/// Closed pattern list, first person only:
///   "I [adv] like|love|enjoy|adore X"        -> likes
///   "I [adv] prefer X"                       -> prefers
///   "I [adv] hate|dislike|detest X",
///   "I can't stand X", "I don't like X"      -> dislikes
std::vector<Preference> extract_preferences(std::string_view text);

/// normalize(sum_i normalize(v_i) / n); canonical vector when empty.
DenseVector mean_pool(const std::vector<DenseVector>& vectors);

/// "Alice likes hiking. Alice dislikes olives." or "" for no attributes.
std::string profile_text(const EntityProfile& profile);

/// Refreshes style vector and profile for every message sender; returns the
/// number of entities refreshed. Idempotent.
std::size_t update_engrams(Store& store);

/// Cosine between the entity's style vector and the candidate's n-gram
/// vector, or nullopt if the entity has none.
std::optional<double> style_score(const Store& store, std::string_view entity,
                                  std::string_view candidate_text);

}  // namespace vmem

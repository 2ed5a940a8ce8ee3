// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Sectioned key-value configuration:
//
//   [gate]          lambda_n lambda_s lambda_pi tau (number | disabled)
//                   salience_floor neighbor_count relevance_cutoff reject_log
//                   offset_<category>
//   [salience]      short_message_chars <category>_score base length_weight
//                   length_norm_chars per_number number_cap date_bonus
//                   emotion_bonus noise_words emotion_words relationship_words
//   [fusion]        every FusionConfig field by name
//   [predictive]    w_fact b_length length_chars b_detail detail_fingerprints
//                   b_event b_contradiction update_verbs
//   [consolidator]  window_events window_episodes summary_sentences
//   [intent]        personality_phrases detail_phrases synthesis_phrases
//                   temporal_phrases
//   [engine]        embedder reranker
//
// Lists are comma-separated. Unknown sections or keys are errors.

#pragma once

#include <filesystem>
#include <string_view>

#include "vmem/engine.hpp"

namespace vmem {

inline constexpr std::string_view kAlphaSurpriseEnv = "TRUEMEMORY_ALPHA_SURPRISE";

/// Applies the file on top of `config`. Throws Error{kIo | kInvalidArgument}.
void apply_config_file(const std::filesystem::path& path, EngineConfig& config);

/// Applies environment overrides (currently the surprise alpha).
void apply_environment(EngineConfig& config);

}  // namespace vmem

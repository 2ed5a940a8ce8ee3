// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Ingestion gate. Each incoming event gets three signals:
//
//   novelty           (|z(M ++ e)| - |z(M)|) / |z(e)|, z = zlib level 6,
//                     M = nearest stored messages, newline-joined
//   salience          hybrid speech-act / feature score
//   prediction error  1 - cos(embed(e [SEP] m1), embed(m1 [SEP] m1))
//
// and is admitted iff salience >= floor and
//   (ln*n + ls*s + lp*pi) / (ln + ls + lp) >= tau + offset(category).

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "vmem/salience.hpp"
#include "vmem/store.hpp"
#include "vmem/types.hpp"

namespace vmem {

struct GateConfig {
  double lambda_n = 0.25;
  double lambda_s = 0.20;
  double lambda_pi = 0.30;
  /// Admission threshold; nullopt disables the gate (admit everything).
  std::optional<double> tau = 0.30;
  double salience_floor = 0.10;
  std::map<Category, double> category_offsets{
      {Category::kCorrection, -0.06},
      {Category::kDecision, -0.04},
      {Category::kRelationship, -0.04},
  };
  std::size_t neighbor_count = 5;
  double relevance_cutoff = 0.15;
  /// Rejected events are appended here as JSON lines when non-empty.
  std::string reject_log;

  /// Throws Error{kInvalidArgument}.
  void validate() const;
};

inline constexpr std::string_view kPairSeparator = " [SEP] ";
inline constexpr int kCompressionLevel = 6;

/// zlib (RFC 1950) stream size at level 6.
std::size_t compressed_size(std::string_view bytes);

double novelty(const Store& store, std::string_view text, const GateConfig& config = GateConfig());

double prediction_error(const Store& store, std::string_view text,
                        const GateConfig& config = GateConfig(),
                        const SalienceConfig& salience = SalienceConfig());

/// Weight-normalized combination of the three signals, in [0, 1].
double gate_score(const GateSignals& signals, const GateConfig& config = GateConfig());
double category_offset(Category category, const GateConfig& config = GateConfig());
/// Floor rule and threshold rule, no store access.
bool gate_admits(const GateSignals& signals, Category category,
                 const GateConfig& config = GateConfig());

struct GateDecision {
  bool admit = true;
  /// Absent when the gate is disabled (no signals are computed).
  std::optional<GateSignals> signals;
  Category category = Category::kStatement;
  double score = 0.0;
};

GateDecision gate_decide(const Store& store, const EventInput& input,
                         const GateConfig& config = GateConfig(),
                         const SalienceConfig& salience = SalienceConfig());

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/gate.hpp"

#include <zlib.h>

#include <algorithm>
#include <string>
#include <vector>

namespace vmem {

void GateConfig::validate() const {
  if (lambda_n < 0 || lambda_s < 0 || lambda_pi < 0) {
    throw Error(ErrorCode::kInvalidArgument, "gate weights must be non-negative");
  }
  if (lambda_n + lambda_s + lambda_pi <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "gate weights must not all be zero");
  }
  if (salience_floor < 0 || salience_floor > 1) {
    throw Error(ErrorCode::kInvalidArgument, "salience floor must lie in [0, 1]");
  }
  if (neighbor_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "neighbor_count must be positive");
  }
}

std::size_t compressed_size(std::string_view bytes) {
  uLongf bound = compressBound(static_cast<uLong>(bytes.size()));
  std::vector<Bytef> out(bound);
  int rc = compress2(out.data(), &bound, reinterpret_cast<const Bytef*>(bytes.data()),
                     static_cast<uLong>(bytes.size()), kCompressionLevel);
  if (rc != Z_OK) throw Error(ErrorCode::kIo, "zlib compress2 failed");
  return static_cast<std::size_t>(bound);
}

double novelty(const Store& store, std::string_view text, const GateConfig& config) {
  if (store.event_count() == 0) return 1.0;
  const std::size_t alone = compressed_size(text);
  if (alone < 10) return 0.05;

  std::string memory;
  for (const DenseHit& hit : store.search_dense(text, config.neighbor_count)) {
    if (!memory.empty()) memory.push_back('\n');
    memory += store.get_event(hit.event_id).text;
  }
  const double with = static_cast<double>(compressed_size(memory + std::string(text)));
  const double without = static_cast<double>(compressed_size(memory));
  return std::clamp((with - without) / static_cast<double>(alone), 0.0, 1.0);
}

double prediction_error(const Store& store, std::string_view text, const GateConfig& config,
                        const SalienceConfig& salience) {
  if (hybrid_salience(text, salience).category == Category::kNoise) return 0.0;
  if (store.event_count() == 0) return 0.0;

  auto nearest = store.search_dense(text, 1);
  if (nearest.empty() || nearest.front().cosine < config.relevance_cutoff) return 0.0;

  const std::string m1 = store.get_event(nearest.front().event_id).text;
  const Embedder& embedder = store.embedder();
  DenseVector cross = embedder.embed(std::string(text) + std::string(kPairSeparator) + m1);
  DenseVector self = embedder.embed(m1 + std::string(kPairSeparator) + m1);
  return std::clamp(1.0 - cosine(cross, self), 0.0, 1.0);
}

double gate_score(const GateSignals& s, const GateConfig& c) {
  const double weight = c.lambda_n + c.lambda_s + c.lambda_pi;
  return (c.lambda_n * s.novelty + c.lambda_s * s.salience + c.lambda_pi * s.prediction_error) /
         weight;
}

double category_offset(Category category, const GateConfig& c) {
  auto it = c.category_offsets.find(category);
  return it == c.category_offsets.end() ? 0.0 : it->second;
}

bool gate_admits(const GateSignals& signals, Category category, const GateConfig& c) {
  if (!c.tau) return true;
  if (signals.salience < c.salience_floor) return false;
  return gate_score(signals, c) >= *c.tau + category_offset(category, c);
}

GateDecision gate_decide(const Store& store, const EventInput& input, const GateConfig& config,
                         const SalienceConfig& salience) {
  GateDecision d;
  if (!config.tau) {
    d.admit = true;
    d.category = input.category.value_or(Category::kStatement);
    return d;
  }
  config.validate();

  SalienceScore s = hybrid_salience(input.text, salience);
  GateSignals signals;
  signals.salience = s.value;
  signals.novelty = novelty(store, input.text, config);
  signals.prediction_error = prediction_error(store, input.text, config, salience);

  d.signals = signals;
  d.category = s.category;
  d.score = gate_score(signals, config);
  d.admit = gate_admits(signals, s.category, config);
  return d;
}

}  // namespace vmem

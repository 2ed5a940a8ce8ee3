// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Desk-scale evaluation: synthetic corpora with planted needles, retrieval
// metrics, the gate-signal sweep and the embedder x reranker grid.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmem/engine.hpp"

namespace vmem::bench {

struct LabeledQuery {
  std::string text;
  /// Ids the events receive when the corpus is ingested in order into an
  /// empty store with the gate off (event i gets id i + 1).
  std::vector<EventId> relevant;
};

struct SyntheticCorpus {
  std::uint64_t seed = 0;
  std::vector<EventInput> events;
  std::vector<LabeledQuery> queries;
};

/// Multi-speaker sessions separated by more than six hours, planted needle
/// facts keyed by unique made-up names, noise, and contradicting updates.
/// Deterministic from `seed`.
SyntheticCorpus generate_corpus(std::uint64_t seed, std::size_t n_events, std::size_t n_queries);

/// Ingests every event in order; returns the assigned ids.
std::vector<EventId> ingest_corpus(Engine& engine, const SyntheticCorpus& corpus);

struct RetrievalMetrics {
  double recall_at_k = 0.0;
  double mrr = 0.0;
  std::size_t queries = 0;
};

/// recall@k = mean |top_k ∩ relevant| / |relevant|; MRR = mean 1/rank of the
/// first relevant hit (0 when none is retrieved).
RetrievalMetrics score_rankings(const std::vector<std::vector<EventId>>& rankings,
                                const std::vector<std::vector<EventId>>& relevant, std::size_t k);

RetrievalMetrics eval_retrieval(const Engine& engine, const SyntheticCorpus& corpus, std::size_t k);

/// Rank-sum (Mann-Whitney) AUC with midranks for ties. nullopt when either
/// class is empty.
std::optional<double> auc_rank_sum(const std::vector<double>& scores, const std::vector<bool>& labels);
/// Direct comparison over all positive/negative pairs, ties count one half.
std::optional<double> auc_all_pairs(const std::vector<double>& scores, const std::vector<bool>& labels);

struct LabeledMessage {
  std::string text;
  std::string sender;
  Timestamp timestamp = 0;
  bool keep = false;
};

/// Informative messages labelled keep; noise and verbatim repeats labelled
/// discard.
std::vector<LabeledMessage> make_labeled_stream(std::uint64_t seed, std::size_t n);

struct GatePoint {
  double lambda_n = 0.25;
  double lambda_s = 0.20;
  double lambda_pi = 0.30;
  double tau = 0.30;
};

struct SweepResult {
  GatePoint point;
  std::optional<double> auc;  // nullopt for degenerate labels
  std::size_t admitted = 0;
};

struct MessageSignals {
  GateSignals signals;
  Category category = Category::kStatement;
};

/// Signals for each message against the messages before it (all stored).
std::vector<MessageSignals> compute_stream_signals(const std::vector<LabeledMessage>& stream,
                                                   const GateConfig& gate = {},
                                                   const SalienceConfig& salience = {});

/// Every combination of lambda_n, lambda_s, lambda_pi in {0, .25, .5, 1}
/// (not all zero) with tau in {0.25, 0.30}.
std::vector<GatePoint> default_gate_grid();

/// Ranks messages by admission margin: score - (tau + offset) when the
/// salience floor holds, pushed below every admissible margin otherwise.
std::vector<SweepResult> sweep_gate(const std::vector<LabeledMessage>& stream,
                                    const std::vector<GatePoint>& grid,
                                    const GateConfig& base = {},
                                    const SalienceConfig& salience = {});

struct GridCell {
  std::string embedder;
  std::string reranker;
  RetrievalMetrics metrics;
};

/// Runs eval_retrieval on a fresh in-memory store per cell, gate off.
std::vector<GridCell> run_grid(const SyntheticCorpus& corpus, const std::vector<std::string>& embedders,
                               const std::vector<std::string>& rerankers, std::size_t k = 10,
                               const EngineConfig& base = {});

/// "embedder,reranker,recall_at_k,mrr" header plus one row per cell.
std::string grid_csv(const std::vector<GridCell>& cells);

}  // namespace vmem::bench

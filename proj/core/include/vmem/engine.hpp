// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Ingestion and query pipelines over one store.

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/consolidator.hpp"
#include "vmem/fusion.hpp"
#include "vmem/gate.hpp"
#include "vmem/intent.hpp"
#include "vmem/predictive.hpp"
#include "vmem/salience.hpp"
#include "vmem/store.hpp"

namespace vmem {

struct EngineConfig {
  GateConfig gate;
  SalienceConfig salience;
  FusionConfig fusion;
  PredictiveConfig predictive;
  ConsolidatorConfig consolidator;
  IntentConfig intent;
  std::string embedder{HashEmbedder::kName};
  /// "overlap-idf", "identity" or "none".
  std::string reranker = "overlap-idf";
};

struct IngestResult {
  bool admitted = false;
  std::optional<Event> event;  // set when admitted
  std::optional<GateSignals> signals;
  Category category = Category::kStatement;
  double gate_score = 0.0;
};

struct QueryResult {
  Event event;
  double score = 0.0;
};

struct BatchReport {
  std::size_t summaries = 0;
  std::size_t contradictions = 0;
  std::size_t timeline = 0;
  std::size_t links_updated = 0;
  std::size_t surprise_scored = 0;
  std::size_t entities_refreshed = 0;
  std::size_t profile_events = 0;
};

/// Called after each query stage with candidate counts in and out. Stages:
/// lexical, dense, separation, fusion, reweight, truncate, rerank.
using TraceHook = std::function<void(std::string_view stage, std::size_t in, std::size_t out)>;

/// Hypothetical-document expansion slot. The default adds nothing.
class QueryExpander {
 public:
  virtual ~QueryExpander() = default;
  virtual std::vector<std::string> expand(std::string_view query) const {
    (void)query;
    return {};
  }
};

class Engine {
 public:
  /// Opens (or creates) the store with the configured built-in embedder, or
  /// with `embedder` when given.
  static Engine open(const std::filesystem::path& path, EngineConfig config = {},
                     std::shared_ptr<const Embedder> embedder = nullptr);

  Engine(Store store, EngineConfig config);

  /// Gate, then append on admit. Throws Error{kEmptyText}.
  IngestResult ingest(const EventInput& input);

  /// Throws Error{kInvalidArgument} if k is 0 or exceeds fusion.final_k.
  /// Never writes to the store.
  std::vector<QueryResult> query(std::string_view query, std::optional<std::size_t> k = std::nullopt) const;

  /// consolidate, build_surprise_index, update_engrams.
  BatchReport run_batch(std::optional<std::size_t> window_events = std::nullopt);

  StoreStats stats() const { return store_.stats(); }

  Store& store() { return store_; }
  const Store& store() const { return store_; }
  const EngineConfig& config() const { return config_; }

  void set_trace_hook(TraceHook hook) { trace_ = std::move(hook); }
  /// Overrides the configured reranker; nullptr restores it.
  void set_reranker(std::shared_ptr<const Reranker> reranker) { reranker_ = std::move(reranker); }
  void set_query_expander(std::shared_ptr<const QueryExpander> e) { expander_ = std::move(e); }

 private:
  Candidate hydrate(EventId id) const;
  void trace(std::string_view stage, std::size_t in, std::size_t out) const;

  Store store_;
  EngineConfig config_;
  TraceHook trace_;
  std::shared_ptr<const Reranker> reranker_;
  std::shared_ptr<const QueryExpander> expander_;
};

}  // namespace vmem

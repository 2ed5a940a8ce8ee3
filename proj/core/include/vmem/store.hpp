// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/dense_index.hpp"
#include "vmem/embedder.hpp"
#include "vmem/lexical_index.hpp"
#include "vmem/records.hpp"
#include "vmem/types.hpp"

namespace vmem {

struct StoreOptions {
  /// Embedder used for vector rows. Defaults to HashEmbedder.
  std::shared_ptr<const Embedder> embedder;
  bool read_only = false;
  Bm25Params bm25;
  /// Called inside the append transaction after each write step ("row",
  /// "lexical", "dense"). Throwing from it aborts the append. Test-only.
  std::function<void(std::string_view step)> fault_hook;
};

/// The verbatim event substrate and every persistent table, held in one
/// database file (":memory:" for an ephemeral store).
///
/// Writes serialize on an internal writer lock; searches and event reads are
/// served from in-memory mirrors that only change when an outermost write
/// transaction commits, so concurrent readers always see committed state.
class Store {
 public:
  static constexpr int kSchemaVersion = 1;

  /// Creates the schema on first open and records the embedder identity.
  /// Throws Error{kCorrupt | kSchemaTooNew | kEmbedderMismatch | kIo}.
  static Store open(const std::filesystem::path& path, StoreOptions options = {});

  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  ~Store();

  const std::filesystem::path& path() const;
  int schema_version() const;
  std::string embedder_identity() const;
  const Embedder& embedder() const;
  std::shared_ptr<const Embedder> shared_embedder() const;

  // -- events ---------------------------------------------------------------

  /// Persists the event row with its lexical postings and vector row in one
  /// transaction. Throws Error{kEmptyText} for empty text.
  Event append_event(const EventInput& input, std::optional<GateSignals> tags = std::nullopt);

  /// Throws Error{kUnknownId}.
  Event get_event(EventId id) const;
  std::optional<Event> find_event(EventId id) const;
  /// Events with from <= timestamp <= to, ordered by (timestamp, id).
  std::vector<Event> list_events(Timestamp from, Timestamp to) const;
  /// All events in id order.
  std::vector<Event> events() const;
  std::vector<Event> events(Modality modality) const;
  std::size_t event_count() const;
  std::optional<Timestamp> latest_timestamp() const;
  std::size_t distinct_sender_count() const;  // message events only
  std::vector<std::string> senders() const;   // message events only, sorted

  /// Recomputes the 6-hour-gap partition of message events and persists it.
  std::vector<Episode> rebuild_episodes();
  std::vector<Episode> episodes() const;

  // -- retrieval ------------------------------------------------------------

  std::vector<LexicalHit> search_lexical(std::string_view query, std::size_t k) const;
  /// BM25 over "sender recipient text" documents (separation rank list).
  std::vector<LexicalHit> search_participants(std::string_view query, std::size_t k) const;
  std::vector<DenseHit> search_dense(std::string_view query, std::size_t k) const;
  std::vector<DenseHit> search_dense(const DenseVector& query, std::size_t k) const;
  std::optional<DenseVector> stored_vector(EventId id) const;
  double lexical_idf(std::string_view term) const;
  std::size_t lexical_document_count() const;

  // -- consolidation artifacts ----------------------------------------------

  bool has_summary(std::string_view cluster_key) const;
  /// Assigns and returns the record id.
  std::int64_t insert_summary(const SummaryRecord& record);
  std::vector<SummaryRecord> summaries() const;

  bool is_consolidated(EventId id) const;
  void mark_consolidated(EventId id);

  /// Returns the new id, or nullopt if the identical (event, triple) exists.
  std::optional<std::int64_t> insert_assertion(const TimelineAssertion& a);
  /// Ordered by (entity, predicate, ts, event_id, id).
  std::vector<TimelineAssertion> timeline() const;
  void set_superseded_by(std::int64_t id, std::optional<std::int64_t> by);

  /// Returns true if the record was new.
  bool insert_contradiction(const ContradictionRecord& c);
  std::vector<ContradictionRecord> contradictions() const;

  // -- surprise index ---------------------------------------------------------

  void replace_surprise_scores(const std::vector<SurpriseScore>& scores);
  bool surprise_index_built() const;
  std::optional<double> surprise(EventId id) const;
  std::vector<SurpriseScore> surprise_scores() const;

  // -- engrams ----------------------------------------------------------------

  void upsert_profile(const EntityProfile& profile);
  std::optional<EntityProfile> profile(std::string_view entity) const;
  std::vector<EntityProfile> profiles() const;
  void upsert_style_vector(const StyleVector& style);
  std::optional<DenseVector> style_vector(std::string_view entity) const;

  StoreStats stats() const;

  /// RAII write transaction; nests via savepoints. Rolls back unless
  /// commit() is called.
  class Transaction {
   public:
    Transaction(Transaction&&) noexcept;
    Transaction& operator=(Transaction&&) = delete;
    ~Transaction();
    void commit();

   private:
    friend class Store;
    explicit Transaction(Store& store);
    Store* store_;
    bool done_ = false;
  };

  Transaction transaction();

  struct Impl;

 private:
  explicit Store(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace vmem

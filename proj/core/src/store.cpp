// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/store.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "json.hpp"

namespace vmem {
namespace {

using json = nlohmann::json;

constexpr const char* kSchema = R"sql(
CREATE TABLE metadata(key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE messages(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  text BLOB NOT NULL,
  sender TEXT NOT NULL,
  recipient TEXT,
  timestamp INTEGER NOT NULL,
  category TEXT NOT NULL,
  modality TEXT NOT NULL,
  novelty REAL,
  salience REAL,
  prediction_error REAL);
CREATE INDEX messages_by_time ON messages(timestamp, id);
CREATE TABLE lexical_postings(
  term TEXT NOT NULL,
  event_id INTEGER NOT NULL,
  tf INTEGER NOT NULL,
  PRIMARY KEY(term, event_id)) WITHOUT ROWID;
CREATE TABLE lexical_docs(event_id INTEGER PRIMARY KEY, length INTEGER NOT NULL);
CREATE TABLE vec_messages(event_id INTEGER PRIMARY KEY, dim INTEGER NOT NULL, vector BLOB NOT NULL);
CREATE TABLE episodes(id INTEGER PRIMARY KEY, start_ts INTEGER NOT NULL, end_ts INTEGER NOT NULL,
                      event_ids TEXT NOT NULL);
CREATE TABLE summaries(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  cluster_key TEXT NOT NULL UNIQUE,
  event_id INTEGER NOT NULL,
  text BLOB NOT NULL,
  source_ids TEXT NOT NULL,
  created_ts INTEGER NOT NULL);
CREATE TABLE consolidated_events(event_id INTEGER PRIMARY KEY);
CREATE TABLE timeline(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  entity TEXT NOT NULL,
  predicate TEXT NOT NULL,
  value TEXT NOT NULL,
  event_id INTEGER NOT NULL,
  ts INTEGER NOT NULL,
  superseded_by INTEGER,
  UNIQUE(event_id, entity, predicate, value));
CREATE TABLE contradictions(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  entity TEXT NOT NULL,
  predicate TEXT NOT NULL,
  event_id_a INTEGER NOT NULL,
  event_id_b INTEGER NOT NULL,
  detected_ts INTEGER NOT NULL,
  UNIQUE(entity, predicate, event_id_a, event_id_b));
CREATE TABLE surprise_scores(event_id INTEGER PRIMARY KEY, sigma REAL NOT NULL);
CREATE TABLE entity_profiles(
  entity TEXT PRIMARY KEY,
  attributes TEXT NOT NULL,
  updated_ts INTEGER NOT NULL,
  profile_event_id INTEGER);
CREATE TABLE entity_style_vectors(entity TEXT PRIMARY KEY, dim INTEGER NOT NULL, vector BLOB NOT NULL);
-- Reserved: no population logic yet.
CREATE TABLE landmark_events(id INTEGER PRIMARY KEY, event_id INTEGER NOT NULL, kind TEXT, ts INTEGER);
CREATE TABLE causal_edges(cause_event_id INTEGER NOT NULL, effect_event_id INTEGER NOT NULL,
                          direction TEXT, PRIMARY KEY(cause_event_id, effect_event_id));
CREATE TABLE entity_relationships(entity_a TEXT NOT NULL, entity_b TEXT NOT NULL, tier INTEGER,
                                  PRIMARY KEY(entity_a, entity_b));
)sql";

[[noreturn]] void throw_sqlite(sqlite3* db, int rc, std::string_view context) {
  std::string msg = std::string(context) + ": " + (db ? sqlite3_errmsg(db) : sqlite3_errstr(rc));
  int primary = rc & 0xFF;
  if (primary == SQLITE_NOTADB || primary == SQLITE_CORRUPT) throw Error(ErrorCode::kCorrupt, msg);
  throw Error(ErrorCode::kIo, msg);
}

void exec(sqlite3* db, const char* sql) {
  char* err = nullptr;
  int rc = sqlite3_exec(db, sql, nullptr, nullptr, &err);
  if (rc != SQLITE_OK) {
    std::string msg = err ? err : "";
    sqlite3_free(err);
    throw_sqlite(db, rc, msg.empty() ? std::string_view(sql) : std::string_view(msg));
  }
}

class Statement {
 public:
  Statement(sqlite3* db, std::string_view sql) : db_(db) {
    int rc = sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_, nullptr);
    if (rc != SQLITE_OK) throw_sqlite(db, rc, "prepare");
  }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;
  ~Statement() { sqlite3_finalize(stmt_); }

  Statement& bind(int i, std::int64_t v) {
    check(sqlite3_bind_int64(stmt_, i, v));
    return *this;
  }
  Statement& bind(int i, double v) {
    check(sqlite3_bind_double(stmt_, i, v));
    return *this;
  }
  Statement& bind(int i, std::string_view v) {
    check(sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind_blob(int i, const void* data, std::size_t n) {
    // A zero-length blob must still bind as a blob, not NULL.
    static const char kEmpty = 0;
    check(sqlite3_bind_blob(stmt_, i, n ? data : &kEmpty, static_cast<int>(n), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind_null(int i) {
    check(sqlite3_bind_null(stmt_, i));
    return *this;
  }
  template <typename T>
  Statement& bind(int i, const std::optional<T>& v) {
    return v ? bind(i, *v) : bind_null(i);
  }

  void reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }

  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw_sqlite(db_, rc, "step");
  }
  void run() {
    while (step()) {
    }
  }

  bool is_null(int c) const { return sqlite3_column_type(stmt_, c) == SQLITE_NULL; }
  std::int64_t integer(int c) const { return sqlite3_column_int64(stmt_, c); }
  double real(int c) const { return sqlite3_column_double(stmt_, c); }
  std::string text(int c) const {
    const void* p = sqlite3_column_blob(stmt_, c);
    int n = sqlite3_column_bytes(stmt_, c);
    return p ? std::string(static_cast<const char*>(p), static_cast<std::size_t>(n)) : std::string();
  }
  std::optional<std::string> optional_text(int c) const {
    if (is_null(c)) return std::nullopt;
    return text(c);
  }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw_sqlite(db_, rc, "bind");
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string encode_vector(const DenseVector& v) {
  std::string blob(kVectorDim * sizeof(double), '\0');
  std::memcpy(blob.data(), v.values().data(), blob.size());
  return blob;
}

DenseVector decode_vector(const std::string& blob, std::int64_t dim) {
  if (dim != static_cast<std::int64_t>(kVectorDim) || blob.size() != kVectorDim * sizeof(double)) {
    throw Error(ErrorCode::kCorrupt, "vector row has wrong dimension");
  }
  DenseVector v;
  std::memcpy(v.values().data(), blob.data(), blob.size());
  return v;
}

std::string participants_document(const Event& e) {
  return e.sender + " " + e.recipient.value_or("") + " " + e.text;
}

std::string join_ids(const std::vector<EventId>& ids) { return json(ids).dump(); }

std::vector<EventId> split_ids(const std::string& s) {
  return json::parse(s).get<std::vector<EventId>>();
}

struct Mirror {
  explicit Mirror(Bm25Params params) : lexical(params), participants(params) {}

  std::vector<Event> events;
  std::unordered_map<EventId, std::size_t> slot;
  std::map<std::string, std::size_t> sender_counts;
  std::optional<Timestamp> latest_ts;
  LexicalIndex lexical;
  LexicalIndex participants;
  DenseIndex dense;
  std::vector<Episode> episodes;
  std::unordered_map<EventId, double> surprise;
  bool surprise_built = false;
  std::map<std::string, EntityProfile, std::less<>> profiles;
  std::map<std::string, DenseVector, std::less<>> style;

  void add_event(const Event& e) {
    slot.emplace(e.id, events.size());
    events.push_back(e);
    if (e.modality == Modality::kMessage) ++sender_counts[e.sender];
    if (!latest_ts || e.timestamp > *latest_ts) latest_ts = e.timestamp;
    participants.add(e.id, analyze_document(participants_document(e)));
  }
};

}  // namespace

struct Store::Impl {
  explicit Impl(StoreOptions opts) : options(std::move(opts)), mirror(options.bm25) {}
  ~Impl() {
    if (db) sqlite3_close_v2(db);
  }

  std::filesystem::path path;
  sqlite3* db = nullptr;
  StoreOptions options;
  std::shared_ptr<const Embedder> embedder;
  int schema_version = 0;
  std::string embedder_name;

  mutable std::shared_mutex mirror_mutex;
  Mirror mirror;

  std::recursive_mutex writer_mutex;
  int depth = 0;
  std::vector<std::function<void(Mirror&)>> pending;
  std::vector<std::size_t> marks;

  void stage(std::function<void(Mirror&)> op) { pending.push_back(std::move(op)); }

  std::optional<std::string> metadata(std::string_view key) {
    Statement st(db, "SELECT value FROM metadata WHERE key = ?");
    st.bind(1, key);
    if (st.step()) return st.text(0);
    return std::nullopt;
  }

  void set_metadata(std::string_view key, std::string_view value) {
    Statement st(db, "INSERT INTO metadata(key, value) VALUES(?, ?) "
                     "ON CONFLICT(key) DO UPDATE SET value = excluded.value");
    st.bind(1, key).bind(2, value).run();
  }

  void load();
};

void Store::Impl::load() {
  {
    Statement st(db,
                 "SELECT id, text, sender, recipient, timestamp, category, modality, novelty, "
                 "salience, prediction_error FROM messages ORDER BY id");
    while (st.step()) {
      Event e;
      e.id = st.integer(0);
      e.text = st.text(1);
      e.sender = st.text(2);
      e.recipient = st.optional_text(3);
      e.timestamp = st.integer(4);
      auto cat = parse_category(st.text(5));
      auto mod = parse_modality(st.text(6));
      if (!cat || !mod) throw Error(ErrorCode::kCorrupt, "unknown category or modality in row");
      e.category = *cat;
      e.modality = *mod;
      if (!st.is_null(7)) e.signal_tags = GateSignals{st.real(7), st.real(8), st.real(9)};
      mirror.add_event(e);
    }
  }
  {
    Statement st(db, "SELECT term, event_id, tf FROM lexical_postings ORDER BY term, event_id");
    while (st.step()) {
      mirror.lexical.add_posting(st.text(0), st.integer(1), static_cast<int>(st.integer(2)));
    }
    Statement docs(db, "SELECT event_id, length FROM lexical_docs ORDER BY event_id");
    while (docs.step()) {
      mirror.lexical.set_document_length(docs.integer(0), static_cast<int>(docs.integer(1)));
    }
  }
  {
    Statement st(db, "SELECT event_id, dim, vector FROM vec_messages ORDER BY event_id");
    while (st.step()) mirror.dense.add(st.integer(0), decode_vector(st.text(2), st.integer(1)));
  }
  if (mirror.lexical.document_count() != mirror.events.size() ||
      mirror.dense.size() != mirror.events.size()) {
    throw Error(ErrorCode::kCorrupt, "index row counts disagree with messages");
  }
  {
    Statement st(db, "SELECT id, start_ts, end_ts, event_ids FROM episodes ORDER BY id");
    while (st.step()) {
      mirror.episodes.push_back({st.integer(0), st.integer(1), st.integer(2), split_ids(st.text(3))});
    }
  }
  {
    Statement st(db, "SELECT event_id, sigma FROM surprise_scores");
    while (st.step()) mirror.surprise.emplace(st.integer(0), st.real(1));
    mirror.surprise_built = metadata("surprise_built").value_or("0") == "1";
  }
  {
    Statement st(db,
                 "SELECT entity, attributes, updated_ts, profile_event_id FROM entity_profiles");
    while (st.step()) {
      EntityProfile p;
      p.entity = st.text(0);
      p.attributes = json::parse(st.text(1)).get<std::map<std::string, std::string>>();
      p.updated_ts = st.integer(2);
      if (!st.is_null(3)) p.profile_event_id = st.integer(3);
      mirror.profiles.emplace(p.entity, std::move(p));
    }
  }
  {
    Statement st(db, "SELECT entity, dim, vector FROM entity_style_vectors");
    while (st.step()) mirror.style.emplace(st.text(0), decode_vector(st.text(2), st.integer(1)));
  }
}

Store::Store(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;
Store::~Store() = default;

Store Store::open(const std::filesystem::path& path, StoreOptions options) {
  auto impl = std::make_unique<Impl>(std::move(options));
  impl->path = path;
  impl->embedder = impl->options.embedder ? impl->options.embedder
                                          : std::make_shared<const HashEmbedder>();
  const bool in_memory = path == ":memory:";
  if (impl->options.read_only && !in_memory && !std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "store does not exist: " + path.string());
  }
  int flags = SQLITE_OPEN_FULLMUTEX |
              (impl->options.read_only ? SQLITE_OPEN_READONLY
                                       : (SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE));
  int rc = sqlite3_open_v2(path.c_str(), &impl->db, flags, nullptr);
  if (rc != SQLITE_OK) throw_sqlite(impl->db, rc, "open " + path.string());
  sqlite3_busy_timeout(impl->db, 5000);

  bool has_metadata = false;
  std::int64_t table_count = 0;
  {
    Statement st(impl->db,
                 "SELECT count(*), coalesce(sum(name = 'metadata'), 0) FROM sqlite_master "
                 "WHERE type = 'table'");
    st.step();
    table_count = st.integer(0);
    has_metadata = st.integer(1) > 0;
  }

  const std::string wanted = impl->embedder->name();
  if (has_metadata) {
    auto version = impl->metadata("schema_version");
    auto embedder = impl->metadata("embedder");
    if (!version || !embedder) throw Error(ErrorCode::kCorrupt, "store metadata incomplete");
    impl->schema_version = std::stoi(*version);
    if (impl->schema_version > kSchemaVersion) {
      throw Error(ErrorCode::kSchemaTooNew, "store schema version " + *version +
                                                " is newer than supported version " +
                                                std::to_string(kSchemaVersion));
    }
    if (*embedder != wanted) {
      throw Error(ErrorCode::kEmbedderMismatch,
                  "store was written with embedder '" + *embedder + "', configured '" + wanted + "'");
    }
    impl->embedder_name = *embedder;
  } else {
    if (table_count > 0) throw Error(ErrorCode::kCorrupt, "file is not a vmem store");
    if (impl->options.read_only) throw Error(ErrorCode::kIo, "cannot initialize a read-only store");
    exec(impl->db, "PRAGMA journal_mode = DELETE");
    exec(impl->db, "BEGIN IMMEDIATE");
    try {
      exec(impl->db, kSchema);
      impl->set_metadata("schema_version", std::to_string(kSchemaVersion));
      impl->set_metadata("embedder", wanted);
      impl->set_metadata("surprise_built", "0");
      exec(impl->db, "COMMIT");
    } catch (...) {
      sqlite3_exec(impl->db, "ROLLBACK", nullptr, nullptr, nullptr);
      throw;
    }
    impl->schema_version = kSchemaVersion;
    impl->embedder_name = wanted;
  }
  impl->load();
  return Store(std::move(impl));
}

const std::filesystem::path& Store::path() const { return impl_->path; }
int Store::schema_version() const { return impl_->schema_version; }
std::string Store::embedder_identity() const { return impl_->embedder_name; }
const Embedder& Store::embedder() const { return *impl_->embedder; }
std::shared_ptr<const Embedder> Store::shared_embedder() const { return impl_->embedder; }

// -- transactions -------------------------------------------------------------

Store::Transaction::Transaction(Store& store) : store_(&store) {
  Impl& impl = *store.impl_;
  if (impl.options.read_only) throw Error(ErrorCode::kIo, "store opened read-only");
  impl.writer_mutex.lock();
  try {
    if (impl.depth == 0) {
      exec(impl.db, "BEGIN IMMEDIATE");
    } else {
      exec(impl.db, ("SAVEPOINT sp" + std::to_string(impl.depth)).c_str());
    }
  } catch (...) {
    impl.writer_mutex.unlock();
    throw;
  }
  impl.marks.push_back(impl.pending.size());
  ++impl.depth;
}

Store::Transaction::Transaction(Transaction&& other) noexcept
    : store_(other.store_), done_(other.done_) {
  other.done_ = true;
}

void Store::Transaction::commit() {
  if (done_) return;
  Impl& impl = *store_->impl_;
  const int d = impl.depth - 1;
  if (d == 0) {
    exec(impl.db, "COMMIT");
    std::unique_lock lock(impl.mirror_mutex);
    for (auto& op : impl.pending) op(impl.mirror);
    impl.pending.clear();
  } else {
    exec(impl.db, ("RELEASE sp" + std::to_string(d)).c_str());
  }
  impl.marks.pop_back();
  impl.depth = d;
  done_ = true;
  impl.writer_mutex.unlock();
}

Store::Transaction::~Transaction() {
  if (done_) return;
  Impl& impl = *store_->impl_;
  const int d = impl.depth - 1;
  impl.pending.resize(impl.marks.back());
  impl.marks.pop_back();
  if (d == 0) {
    sqlite3_exec(impl.db, "ROLLBACK", nullptr, nullptr, nullptr);
  } else {
    std::string sp = "sp" + std::to_string(d);
    sqlite3_exec(impl.db, ("ROLLBACK TO " + sp + "; RELEASE " + sp).c_str(), nullptr, nullptr,
                 nullptr);
  }
  impl.depth = d;
  impl.writer_mutex.unlock();
}

Store::Transaction Store::transaction() { return Transaction(*this); }

// -- events -------------------------------------------------------------------

Event Store::append_event(const EventInput& input, std::optional<GateSignals> tags) {
  if (input.text.empty()) throw Error(ErrorCode::kEmptyText, "event text is empty");
  if (input.timestamp < 0) throw Error(ErrorCode::kInvalidArgument, "negative timestamp");

  Impl& impl = *impl_;
  Transaction tx(*this);
  Event e;
  e.text = input.text;
  e.sender = input.sender;
  e.recipient = input.recipient;
  e.timestamp = input.timestamp;
  e.category = input.category.value_or(Category::kStatement);
  e.modality = input.modality;
  e.signal_tags = tags;

  {
    Statement st(impl.db,
                 "INSERT INTO messages(text, sender, recipient, timestamp, category, modality, "
                 "novelty, salience, prediction_error) VALUES(?, ?, ?, ?, ?, ?, ?, ?, ?)");
    st.bind_blob(1, e.text.data(), e.text.size())
        .bind(2, std::string_view(e.sender))
        .bind(3, e.recipient)
        .bind(4, std::int64_t{e.timestamp})
        .bind(5, to_string(e.category))
        .bind(6, to_string(e.modality));
    if (tags) {
      st.bind(7, tags->novelty).bind(8, tags->salience).bind(9, tags->prediction_error);
    } else {
      st.bind_null(7).bind_null(8).bind_null(9);
    }
    st.run();
    e.id = sqlite3_last_insert_rowid(impl.db);
  }
  if (impl.options.fault_hook) impl.options.fault_hook("row");

  DocTerms doc = analyze_document(e.text);
  {
    Statement st(impl.db, "INSERT INTO lexical_postings(term, event_id, tf) VALUES(?, ?, ?)");
    for (const auto& [term, tf] : doc.term_freqs) {
      st.reset();
      st.bind(1, std::string_view(term)).bind(2, std::int64_t{e.id}).bind(3, std::int64_t{tf}).run();
    }
    Statement len(impl.db, "INSERT INTO lexical_docs(event_id, length) VALUES(?, ?)");
    len.bind(1, std::int64_t{e.id}).bind(2, std::int64_t{doc.length}).run();
  }
  if (impl.options.fault_hook) impl.options.fault_hook("lexical");

  DenseVector vec = impl.embedder->embed(e.text).normalized();
  {
    std::string blob = encode_vector(vec);
    Statement st(impl.db, "INSERT INTO vec_messages(event_id, dim, vector) VALUES(?, ?, ?)");
    st.bind(1, std::int64_t{e.id})
        .bind(2, static_cast<std::int64_t>(kVectorDim))
        .bind_blob(3, blob.data(), blob.size())
        .run();
  }
  if (impl.options.fault_hook) impl.options.fault_hook("dense");

  impl.stage([e, doc = std::move(doc), vec](Mirror& m) {
    m.add_event(e);
    m.lexical.add(e.id, doc);
    m.dense.add(e.id, vec);
  });
  tx.commit();
  return e;
}

std::optional<Event> Store::find_event(EventId id) const {
  std::shared_lock lock(impl_->mirror_mutex);
  const Mirror& m = impl_->mirror;
  auto it = m.slot.find(id);
  if (it == m.slot.end()) return std::nullopt;
  return m.events[it->second];
}

Event Store::get_event(EventId id) const {
  auto e = find_event(id);
  if (!e) throw Error(ErrorCode::kUnknownId, "unknown event id " + std::to_string(id));
  return *std::move(e);
}

std::vector<Event> Store::list_events(Timestamp from, Timestamp to) const {
  std::vector<Event> out;
  std::shared_lock lock(impl_->mirror_mutex);
  for (const Event& e : impl_->mirror.events) {
    if (e.timestamp >= from && e.timestamp <= to) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  return out;
}

std::vector<Event> Store::events() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.events;
}

std::vector<Event> Store::events(Modality modality) const {
  std::vector<Event> out;
  std::shared_lock lock(impl_->mirror_mutex);
  for (const Event& e : impl_->mirror.events) {
    if (e.modality == modality) out.push_back(e);
  }
  return out;
}

std::size_t Store::event_count() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.events.size();
}

std::optional<Timestamp> Store::latest_timestamp() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.latest_ts;
}

std::size_t Store::distinct_sender_count() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.sender_counts.size();
}

std::vector<std::string> Store::senders() const {
  std::vector<std::string> out;
  std::shared_lock lock(impl_->mirror_mutex);
  for (const auto& [name, count] : impl_->mirror.sender_counts) out.push_back(name);
  return out;
}

std::vector<Episode> Store::rebuild_episodes() {
  std::vector<Event> msgs = events(Modality::kMessage);
  std::stable_sort(msgs.begin(), msgs.end(), [](const Event& a, const Event& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  std::vector<Episode> episodes;
  for (const Event& e : msgs) {
    if (episodes.empty() || e.timestamp - episodes.back().end_ts >= kEpisodeGapSeconds) {
      Episode ep;
      ep.id = static_cast<std::int64_t>(episodes.size()) + 1;
      ep.start_ts = e.timestamp;
      episodes.push_back(ep);
    }
    episodes.back().end_ts = e.timestamp;
    episodes.back().event_ids.push_back(e.id);
  }

  if (impl_->options.read_only) return episodes;
  Transaction tx(*this);
  exec(impl_->db, "DELETE FROM episodes");
  Statement st(impl_->db,
               "INSERT INTO episodes(id, start_ts, end_ts, event_ids) VALUES(?, ?, ?, ?)");
  for (const Episode& ep : episodes) {
    st.reset();
    st.bind(1, ep.id).bind(2, std::int64_t{ep.start_ts}).bind(3, std::int64_t{ep.end_ts});
    st.bind(4, std::string_view(join_ids(ep.event_ids))).run();
  }
  impl_->stage([episodes](Mirror& m) { m.episodes = episodes; });
  tx.commit();
  return episodes;
}

std::vector<Episode> Store::episodes() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.episodes;
}

// -- retrieval ----------------------------------------------------------------

std::vector<LexicalHit> Store::search_lexical(std::string_view query, std::size_t k) const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.lexical.search(query, k);
}

std::vector<LexicalHit> Store::search_participants(std::string_view query, std::size_t k) const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.participants.search(query, k);
}

std::vector<DenseHit> Store::search_dense(std::string_view query, std::size_t k) const {
  return search_dense(impl_->embedder->embed(query).normalized(), k);
}

std::vector<DenseHit> Store::search_dense(const DenseVector& query, std::size_t k) const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.dense.search(query, k);
}

std::optional<DenseVector> Store::stored_vector(EventId id) const {
  std::shared_lock lock(impl_->mirror_mutex);
  const DenseVector* v = impl_->mirror.dense.find(id);
  if (!v) return std::nullopt;
  return *v;
}

double Store::lexical_idf(std::string_view term) const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.lexical.idf(term);
}

std::size_t Store::lexical_document_count() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.lexical.document_count();
}

// -- consolidation artifacts --------------------------------------------------

bool Store::has_summary(std::string_view cluster_key) const {
  Statement st(impl_->db, "SELECT 1 FROM summaries WHERE cluster_key = ?");
  st.bind(1, cluster_key);
  return st.step();
}

std::int64_t Store::insert_summary(const SummaryRecord& r) {
  Transaction tx(*this);
  Statement st(impl_->db,
               "INSERT INTO summaries(cluster_key, event_id, text, source_ids, created_ts) "
               "VALUES(?, ?, ?, ?, ?)");
  st.bind(1, std::string_view(r.cluster_key)).bind(2, std::int64_t{r.event_id});
  st.bind_blob(3, r.text.data(), r.text.size());
  st.bind(4, std::string_view(join_ids(r.source_event_ids))).bind(5, std::int64_t{r.created_ts});
  st.run();
  std::int64_t id = sqlite3_last_insert_rowid(impl_->db);
  tx.commit();
  return id;
}

std::vector<SummaryRecord> Store::summaries() const {
  std::vector<SummaryRecord> out;
  Statement st(impl_->db,
               "SELECT id, cluster_key, event_id, text, source_ids, created_ts FROM summaries "
               "ORDER BY id");
  while (st.step()) {
    out.push_back({st.integer(0), st.text(1), st.integer(2), st.text(3), split_ids(st.text(4)),
                   st.integer(5)});
  }
  return out;
}

bool Store::is_consolidated(EventId id) const {
  Statement st(impl_->db, "SELECT 1 FROM consolidated_events WHERE event_id = ?");
  st.bind(1, std::int64_t{id});
  return st.step();
}

void Store::mark_consolidated(EventId id) {
  Transaction tx(*this);
  Statement st(impl_->db, "INSERT OR IGNORE INTO consolidated_events(event_id) VALUES(?)");
  st.bind(1, std::int64_t{id}).run();
  tx.commit();
}

std::optional<std::int64_t> Store::insert_assertion(const TimelineAssertion& a) {
  Transaction tx(*this);
  Statement st(impl_->db,
               "INSERT OR IGNORE INTO timeline(entity, predicate, value, event_id, ts) "
               "VALUES(?, ?, ?, ?, ?)");
  st.bind(1, std::string_view(a.entity))
      .bind(2, std::string_view(a.predicate))
      .bind(3, std::string_view(a.value))
      .bind(4, std::int64_t{a.event_id})
      .bind(5, std::int64_t{a.ts})
      .run();
  std::optional<std::int64_t> id;
  if (sqlite3_changes(impl_->db) > 0) id = sqlite3_last_insert_rowid(impl_->db);
  tx.commit();
  return id;
}

std::vector<TimelineAssertion> Store::timeline() const {
  std::vector<TimelineAssertion> out;
  Statement st(impl_->db,
               "SELECT id, entity, predicate, value, event_id, ts, superseded_by FROM timeline "
               "ORDER BY entity, predicate, ts, event_id, id");
  while (st.step()) {
    TimelineAssertion a;
    a.id = st.integer(0);
    a.entity = st.text(1);
    a.predicate = st.text(2);
    a.value = st.text(3);
    a.event_id = st.integer(4);
    a.ts = st.integer(5);
    if (!st.is_null(6)) a.superseded_by = st.integer(6);
    out.push_back(std::move(a));
  }
  return out;
}

void Store::set_superseded_by(std::int64_t id, std::optional<std::int64_t> by) {
  Transaction tx(*this);
  Statement st(impl_->db, "UPDATE timeline SET superseded_by = ? WHERE id = ?");
  st.bind(1, by).bind(2, id).run();
  tx.commit();
}

bool Store::insert_contradiction(const ContradictionRecord& c) {
  Transaction tx(*this);
  Statement st(impl_->db,
               "INSERT OR IGNORE INTO contradictions(entity, predicate, event_id_a, event_id_b, "
               "detected_ts) VALUES(?, ?, ?, ?, ?)");
  st.bind(1, std::string_view(c.entity))
      .bind(2, std::string_view(c.predicate))
      .bind(3, std::int64_t{c.event_id_a})
      .bind(4, std::int64_t{c.event_id_b})
      .bind(5, std::int64_t{c.detected_ts})
      .run();
  bool inserted = sqlite3_changes(impl_->db) > 0;
  tx.commit();
  return inserted;
}

std::vector<ContradictionRecord> Store::contradictions() const {
  std::vector<ContradictionRecord> out;
  Statement st(impl_->db,
               "SELECT id, entity, predicate, event_id_a, event_id_b, detected_ts "
               "FROM contradictions ORDER BY id");
  while (st.step()) {
    out.push_back({st.integer(0), st.text(1), st.text(2), st.integer(3), st.integer(4),
                   st.integer(5)});
  }
  return out;
}

// -- surprise -----------------------------------------------------------------

void Store::replace_surprise_scores(const std::vector<SurpriseScore>& scores) {
  Transaction tx(*this);
  exec(impl_->db, "DELETE FROM surprise_scores");
  Statement st(impl_->db, "INSERT INTO surprise_scores(event_id, sigma) VALUES(?, ?)");
  for (const SurpriseScore& s : scores) {
    st.reset();
    st.bind(1, std::int64_t{s.event_id}).bind(2, s.sigma).run();
  }
  impl_->set_metadata("surprise_built", "1");
  std::unordered_map<EventId, double> map;
  for (const SurpriseScore& s : scores) map[s.event_id] = s.sigma;
  impl_->stage([map = std::move(map)](Mirror& m) {
    m.surprise = map;
    m.surprise_built = true;
  });
  tx.commit();
}

bool Store::surprise_index_built() const {
  std::shared_lock lock(impl_->mirror_mutex);
  return impl_->mirror.surprise_built;
}

std::optional<double> Store::surprise(EventId id) const {
  std::shared_lock lock(impl_->mirror_mutex);
  auto it = impl_->mirror.surprise.find(id);
  if (it == impl_->mirror.surprise.end()) return std::nullopt;
  return it->second;
}

std::vector<SurpriseScore> Store::surprise_scores() const {
  std::vector<SurpriseScore> out;
  {
    std::shared_lock lock(impl_->mirror_mutex);
    for (const auto& [id, sigma] : impl_->mirror.surprise) out.push_back({id, sigma});
  }
  std::sort(out.begin(), out.end(),
            [](const SurpriseScore& a, const SurpriseScore& b) { return a.event_id < b.event_id; });
  return out;
}

// -- engrams ------------------------------------------------------------------

void Store::upsert_profile(const EntityProfile& p) {
  Transaction tx(*this);
  Statement st(impl_->db,
               "INSERT INTO entity_profiles(entity, attributes, updated_ts, profile_event_id) "
               "VALUES(?, ?, ?, ?) ON CONFLICT(entity) DO UPDATE SET "
               "attributes = excluded.attributes, updated_ts = excluded.updated_ts, "
               "profile_event_id = excluded.profile_event_id");
  st.bind(1, std::string_view(p.entity))
      .bind(2, std::string_view(json(p.attributes).dump()))
      .bind(3, std::int64_t{p.updated_ts})
      .bind(4, p.profile_event_id)
      .run();
  impl_->stage([p](Mirror& m) { m.profiles.insert_or_assign(p.entity, p); });
  tx.commit();
}

std::optional<EntityProfile> Store::profile(std::string_view entity) const {
  std::shared_lock lock(impl_->mirror_mutex);
  auto it = impl_->mirror.profiles.find(entity);
  if (it == impl_->mirror.profiles.end()) return std::nullopt;
  return it->second;
}

std::vector<EntityProfile> Store::profiles() const {
  std::vector<EntityProfile> out;
  std::shared_lock lock(impl_->mirror_mutex);
  for (const auto& [name, p] : impl_->mirror.profiles) out.push_back(p);
  return out;
}

void Store::upsert_style_vector(const StyleVector& s) {
  Transaction tx(*this);
  std::string blob = encode_vector(s.vector);
  Statement st(impl_->db,
               "INSERT INTO entity_style_vectors(entity, dim, vector) VALUES(?, ?, ?) "
               "ON CONFLICT(entity) DO UPDATE SET dim = excluded.dim, vector = excluded.vector");
  st.bind(1, std::string_view(s.entity))
      .bind(2, static_cast<std::int64_t>(kVectorDim))
      .bind_blob(3, blob.data(), blob.size())
      .run();
  impl_->stage([s](Mirror& m) { m.style.insert_or_assign(s.entity, s.vector); });
  tx.commit();
}

std::optional<DenseVector> Store::style_vector(std::string_view entity) const {
  std::shared_lock lock(impl_->mirror_mutex);
  auto it = impl_->mirror.style.find(entity);
  if (it == impl_->mirror.style.end()) return std::nullopt;
  return it->second;
}

StoreStats Store::stats() const {
  StoreStats s;
  {
    std::shared_lock lock(impl_->mirror_mutex);
    const Mirror& m = impl_->mirror;
    s.event_count = m.events.size();
    for (const auto& [name, count] : m.sender_counts) s.message_count += count;
    s.episode_count = m.episodes.size();
    s.entity_count = m.sender_counts.size();
    s.surprise_scored = m.surprise.size();
    s.profile_count = m.profiles.size();
  }
  s.surprise_coverage = s.message_count == 0 ? 0.0
                                             : static_cast<double>(s.surprise_scored) /
                                                   static_cast<double>(s.message_count);
  auto count = [this](const char* sql) {
    Statement st(impl_->db, sql);
    st.step();
    return static_cast<std::size_t>(st.integer(0));
  };
  s.summary_count = count("SELECT count(*) FROM summaries");
  s.timeline_count = count("SELECT count(*) FROM timeline");
  s.contradiction_count = count("SELECT count(*) FROM contradictions");
  return s;
}

}  // namespace vmem

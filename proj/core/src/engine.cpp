// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/engine.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "vmem/engram.hpp"
#include "vmem/text.hpp"

namespace vmem {

using json = nlohmann::json;

Engine Engine::open(const std::filesystem::path& path, EngineConfig config,
                    std::shared_ptr<const Embedder> embedder) {
  StoreOptions options;
  options.embedder = embedder ? std::move(embedder) : make_builtin_embedder(config.embedder);
  if (!options.embedder) {
    throw Error(ErrorCode::kInvalidArgument, "unknown embedder: " + config.embedder);
  }
  return Engine(Store::open(path, std::move(options)), std::move(config));
}

Engine::Engine(Store store, EngineConfig config) : store_(std::move(store)), config_(std::move(config)) {
  config_.fusion.validate();
  if (config_.gate.tau) config_.gate.validate();
  if (config_.reranker != "overlap-idf" && config_.reranker != "identity" && config_.reranker != "none") {
    throw Error(ErrorCode::kInvalidArgument, "unknown reranker: " + config_.reranker);
  }
}

void Engine::trace(std::string_view stage, std::size_t in, std::size_t out) const {
  if (trace_) trace_(stage, in, out);
}

IngestResult Engine::ingest(const EventInput& input) {
  if (input.text.empty()) throw Error(ErrorCode::kEmptyText, "event text is empty");

  auto tx = store_.transaction();
  const GateDecision d = gate_decide(store_, input, config_.gate, config_.salience);
  IngestResult r;
  r.admitted = d.admit;
  r.signals = d.signals;
  r.category = d.category;
  r.gate_score = d.score;

  if (d.admit) {
    EventInput row = input;
    if (d.signals) row.category = d.category;
    r.event = store_.append_event(row, d.signals);
    r.category = r.event->category;
  } else if (!config_.gate.reject_log.empty()) {
    json line{{"text", input.text},
              {"sender", input.sender},
              {"timestamp", input.timestamp},
              {"category", to_string(d.category)},
              {"score", d.score}};
    if (d.signals) {
      line["novelty"] = d.signals->novelty;
      line["salience"] = d.signals->salience;
      line["prediction_error"] = d.signals->prediction_error;
    }
    std::ofstream log(config_.gate.reject_log, std::ios::app);
    if (!log) throw Error(ErrorCode::kIo, "cannot open reject log " + config_.gate.reject_log);
    log << line.dump() << '\n';
  }
  tx.commit();
  return r;
}

Candidate Engine::hydrate(EventId id) const {
  const Event e = store_.get_event(id);
  Candidate c;
  c.event_id = id;
  c.modality = e.modality;
  c.timestamp = e.timestamp;
  c.text = e.text;
  c.sender = e.sender;
  c.salience = e.signal_tags ? e.signal_tags->salience : hybrid_salience(e.text, config_.salience).value;
  c.sigma = store_.surprise(id).value_or(0.0);
  return c;
}

std::vector<QueryResult> Engine::query(std::string_view q, std::optional<std::size_t> k) const {
  const FusionConfig& fc = config_.fusion;
  const std::size_t want = k.value_or(fc.final_k);
  if (want == 0 || want > fc.final_k) {
    throw Error(ErrorCode::kInvalidArgument, "k must lie in [1, final_k]");
  }
  if (store_.event_count() == 0) return {};

  std::string expanded(q);
  if (expander_) {
    for (const std::string& extra : expander_->expand(q)) expanded += " " + extra;
  }

  const QueryIntent intent = detect_intent(q, store_.latest_timestamp().value_or(0), config_.intent);
  const std::size_t n = store_.event_count();

  const auto lexical = store_.search_lexical(expanded, fc.candidate_k);
  trace("lexical", n, lexical.size());
  const auto dense = store_.search_dense(expanded, fc.candidate_k);
  trace("dense", n, dense.size());

  const std::size_t senders = store_.distinct_sender_count();
  std::optional<std::vector<LexicalHit>> separation;
  if (senders > fc.sep_min_senders) {
    std::string sep_query = intent.focal_entity ? *intent.focal_entity + " " + expanded : expanded;
    separation = store_.search_participants(sep_query, fc.candidate_k);
  }
  trace("separation", n, separation ? separation->size() : 0);

  std::vector<Candidate> fused =
      rrf_fuse(lexical, dense, separation ? &*separation : nullptr, senders, fc);
  for (Candidate& c : fused) {
    Candidate h = hydrate(c.event_id);
    h.fts_rank = c.fts_rank;
    h.vec_rank = c.vec_rank;
    h.sep_rank = c.sep_rank;
    h.score = c.score;
    c = std::move(h);
  }
  trace("fusion", lexical.size() + dense.size() + (separation ? separation->size() : 0), fused.size());

  ReweightInputs inputs;
  inputs.surprise_built = store_.surprise_index_built();
  if (intent.personality && intent.focal_entity) {
    std::optional<EntityProfile> profile = store_.profile(*intent.focal_entity);
    std::string entity = *intent.focal_entity;
    if (!profile) {
      const std::string folded = text::fold_case(entity);
      for (EntityProfile& p : store_.profiles()) {
        if (text::fold_case(p.entity) == folded) {
          entity = p.entity;
          profile = std::move(p);
          break;
        }
      }
    }
    if (profile && profile->profile_event_id) {
      inputs.profile_candidates.push_back(hydrate(*profile->profile_event_id));
    }
    if (std::optional<DenseVector> style = store_.style_vector(entity)) {
      std::vector<std::pair<double, EventId>> scored;
      for (const Event& e : store_.events(Modality::kMessage)) {
        scored.emplace_back(cosine(*style, ngram_vector(e.text, kStyleNgrams)), e.id);
      }
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      if (scored.size() > fc.style_inject_count) scored.resize(fc.style_inject_count);
      for (const auto& [s, id] : scored) inputs.style_candidates.push_back(hydrate(id));
    }
  }
  const std::size_t before = fused.size();
  std::vector<Candidate> weighted = reweight(std::move(fused), intent, fc, inputs);
  trace("reweight", before, weighted.size());

  const std::size_t pre_truncate = weighted.size();
  if (weighted.size() > fc.prerank_window) weighted.resize(fc.prerank_window);
  trace("truncate", pre_truncate, weighted.size());

  std::optional<OverlapReranker> overlap;
  IdentityReranker identity;
  const Reranker* reranker = reranker_.get();
  if (!reranker) {
    if (config_.reranker == "overlap-idf") {
      overlap.emplace([this](std::string_view t) { return store_.lexical_idf(t); });
      reranker = &*overlap;
    } else if (config_.reranker == "identity") {
      reranker = &identity;
    }
  }
  const std::size_t pre_rerank = weighted.size();
  std::vector<Candidate> ranked = rerank(q, std::move(weighted), reranker, intent.question_type, fc);
  trace("rerank", pre_rerank, ranked.size());

  if (ranked.size() > want) ranked.resize(want);
  std::vector<QueryResult> out;
  out.reserve(ranked.size());
  for (const Candidate& c : ranked) out.push_back({store_.get_event(c.event_id), c.score});
  return out;
}

BatchReport Engine::run_batch(std::optional<std::size_t> window_events) {
  ConsolidatorConfig cc = config_.consolidator;
  cc.salience = config_.salience;
  if (window_events) cc.window_events = *window_events;

  auto tx = store_.transaction();
  const std::size_t profiles_before = store_.events(Modality::kProfile).size();
  BatchReport r;
  const ConsolidationReport c = consolidate(store_, cc);
  r.summaries = c.summaries.size();
  r.contradictions = c.contradictions.size();
  r.timeline = c.timeline.size();
  r.links_updated = c.links_updated;
  r.surprise_scored = build_surprise_index(store_, config_.predictive);
  r.entities_refreshed = update_engrams(store_);
  tx.commit();
  // mirrors refresh on commit
  r.profile_events = store_.events(Modality::kProfile).size() - profiles_before;
  return r;
}

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Candidate fusion, conditional reweighting and reranking.
//
//   RRF(d) = sum_r w_r / (k + r(d)),  k = 60, w_sep = 0.8 * w_vec
//
// Reweighting runs in a fixed order: temporal boost, profile/style
// injection, minimum-salience drop, surprise boost.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmem/dense_index.hpp"
#include "vmem/intent.hpp"
#include "vmem/lexical_index.hpp"
#include "vmem/types.hpp"

namespace vmem {

struct Candidate {
  EventId event_id = 0;
  std::optional<int> fts_rank;
  std::optional<int> vec_rank;
  std::optional<int> sep_rank;
  double score = 0.0;          // running scalar
  double prerank_score = 0.0;  // score entering the reranker
  Modality modality = Modality::kMessage;
  double salience = 1.0;
  double sigma = 0.0;
  Timestamp timestamp = 0;
  std::string text;
  std::string sender;
  bool injected = false;  // added by the profile/style prior
};

struct FusionConfig {
  double k_rrf = 60.0;
  double w_fts = 1.0;
  double w_vec = 1.0;
  double w_sep_factor = 0.8;
  std::size_t sep_min_senders = 5;  // separation list needs more than this
  double alpha_surprise = 0.2;
  double temporal_boost = 1.3;
  double profile_inject_factor = 0.8;
  double style_inject_factor = 0.9;
  std::size_t style_inject_count = 5;
  double min_salience = 0.05;
  double modality_detail_penalty = 0.7;
  double modality_synthesis_boost = 1.2;
  std::size_t candidate_k = 100;  // per-source list depth
  std::size_t prerank_window = 100;
  std::size_t final_k = 10;

  /// Throws Error{kInvalidArgument} unless every field is positive.
  void validate() const;
};

/// Orders by score descending, then event id ascending.
void sort_candidates(std::vector<Candidate>& candidates);

/// Weighted RRF. `separation` is used only when distinct_senders exceeds
/// config.sep_min_senders.
std::vector<Candidate> rrf_fuse(const std::vector<LexicalHit>& lexical,
                                const std::vector<DenseHit>& dense,
                                const std::vector<LexicalHit>* separation,
                                std::size_t distinct_senders, const FusionConfig& config = {});

struct ReweightInputs {
  bool surprise_built = false;
  /// Hydrated candidates for the L0 prior; injected only on personality intent.
  std::vector<Candidate> profile_candidates;
  std::vector<Candidate> style_candidates;
};

std::vector<Candidate> reweight(std::vector<Candidate> candidates, const QueryIntent& intent,
                                const FusionConfig& config, const ReweightInputs& inputs);

/// Scores (query, candidate) pairs. May throw; a failing pair keeps its
/// pre-rerank score.
class Reranker {
 public:
  virtual ~Reranker() = default;
  virtual std::string name() const = 0;
  virtual double score(std::string_view query, const Candidate& candidate) const = 0;
};

/// Fraction of the query's IDF mass whose tokens occur in the candidate.
class OverlapReranker final : public Reranker {
 public:
  using IdfFn = std::function<double(std::string_view)>;
  explicit OverlapReranker(IdfFn idf) : idf_(std::move(idf)) {}
  std::string name() const override { return "overlap-idf"; }
  double score(std::string_view query, const Candidate& candidate) const override;

 private:
  IdfFn idf_;
};

/// Returns the running score unchanged.
class IdentityReranker final : public Reranker {
 public:
  std::string name() const override { return "identity"; }
  double score(std::string_view, const Candidate& c) const override { return c.score; }
};

double modality_factor(Modality modality, QuestionType type, const FusionConfig& config = {});

/// Reranks, applies the modality factor and returns the top final_k ordered
/// by score desc, prerank score desc, id asc. A null reranker keeps the
/// running score.
std::vector<Candidate> rerank(std::string_view query, std::vector<Candidate> candidates,
                              const Reranker* reranker, QuestionType type,
                              const FusionConfig& config = {});

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/fusion.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "vmem/text.hpp"

namespace vmem {

void FusionConfig::validate() const {
  const double reals[] = {k_rrf,          w_fts,           w_vec,
                          w_sep_factor,   alpha_surprise,  temporal_boost,
                          profile_inject_factor, style_inject_factor, min_salience,
                          modality_detail_penalty, modality_synthesis_boost};
  for (double v : reals) {
    if (!(v > 0)) throw Error(ErrorCode::kInvalidArgument, "fusion constants must be positive");
  }
  if (prerank_window == 0 || final_k == 0 || candidate_k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "fusion window sizes must be positive");
  }
}

void sort_candidates(std::vector<Candidate>& c) {
  std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.event_id < b.event_id;
  });
}

std::vector<Candidate> rrf_fuse(const std::vector<LexicalHit>& lexical,
                                const std::vector<DenseHit>& dense,
                                const std::vector<LexicalHit>* separation,
                                std::size_t distinct_senders, const FusionConfig& config) {
  std::map<EventId, Candidate> by_id;
  auto slot = [&](EventId id) -> Candidate& {
    Candidate& c = by_id[id];
    c.event_id = id;
    return c;
  };
  for (const LexicalHit& h : lexical) {
    Candidate& c = slot(h.event_id);
    c.fts_rank = h.rank;
    c.score += config.w_fts / (config.k_rrf + h.rank);
  }
  for (const DenseHit& h : dense) {
    Candidate& c = slot(h.event_id);
    c.vec_rank = h.rank;
    c.score += config.w_vec / (config.k_rrf + h.rank);
  }
  if (separation && distinct_senders > config.sep_min_senders) {
    const double w_sep = config.w_sep_factor * config.w_vec;
    for (const LexicalHit& h : *separation) {
      Candidate& c = slot(h.event_id);
      c.sep_rank = h.rank;
      c.score += w_sep / (config.k_rrf + h.rank);
    }
  }
  std::vector<Candidate> out;
  out.reserve(by_id.size());
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  sort_candidates(out);
  return out;
}

std::vector<Candidate> reweight(std::vector<Candidate> candidates, const QueryIntent& intent,
                                const FusionConfig& config, const ReweightInputs& inputs) {
  if (intent.temporal) {
    for (Candidate& c : candidates) {
      const bool in_set = intent.time_window
                              ? c.timestamp >= intent.time_window->from && c.timestamp <= intent.time_window->to
                              : !text::find_dates(c.text).empty();
      if (in_set) c.score *= config.temporal_boost;
    }
  }

  if (intent.personality &&
      (!inputs.profile_candidates.empty() || !inputs.style_candidates.empty())) {
    double top = 0.0;
    for (const Candidate& c : candidates) top = std::max(top, c.score);
    if (candidates.empty()) top = 1.0 / (config.k_rrf + 1.0);
    auto inject = [&](const std::vector<Candidate>& extra, double factor) {
      for (const Candidate& e : extra) {
        const double s = factor * top;
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const Candidate& c) { return c.event_id == e.event_id; });
        if (it != candidates.end()) {
          it->score = std::max(it->score, s);
        } else {
          Candidate c = e;
          c.score = s;
          c.injected = true;
          candidates.push_back(std::move(c));
        }
      }
    };
    inject(inputs.profile_candidates, config.profile_inject_factor);
    inject(inputs.style_candidates, config.style_inject_factor);
  }

  std::erase_if(candidates, [&](const Candidate& c) { return c.salience < config.min_salience; });

  if (inputs.surprise_built) {
    for (Candidate& c : candidates) {
      if (c.sigma > 0) c.score *= 1.0 + config.alpha_surprise * c.sigma;
    }
  }
  sort_candidates(candidates);
  return candidates;
}

double OverlapReranker::score(std::string_view query, const Candidate& candidate) const {
  std::vector<std::string> terms;
  for (std::string& t : text::tokenize(query)) {
    if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(std::move(t));
  }
  const auto doc = text::tokenize(candidate.text);
  const std::unordered_set<std::string> present(doc.begin(), doc.end());
  double total = 0.0;
  double hit = 0.0;
  for (const std::string& t : terms) {
    const double w = idf_(t);
    total += w;
    if (present.contains(t)) hit += w;
  }
  return total > 0 ? hit / total : 0.0;
}

double modality_factor(Modality modality, QuestionType type, const FusionConfig& config) {
  if (modality != Modality::kSummary) return 1.0;
  switch (type) {
    case QuestionType::kDetail: return config.modality_detail_penalty;
    case QuestionType::kSynthesis: return config.modality_synthesis_boost;
    case QuestionType::kGeneral: return 1.0;
  }
  return 1.0;
}

std::vector<Candidate> rerank(std::string_view query, std::vector<Candidate> candidates,
                              const Reranker* reranker, QuestionType type,
                              const FusionConfig& config) {
  for (Candidate& c : candidates) {
    c.prerank_score = c.score;
    double s = c.score;
    if (reranker) {
      try {
        s = reranker->score(query, c);
      } catch (...) {
        s = c.prerank_score;
      }
    }
    c.score = s * modality_factor(c.modality, type, config);
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.prerank_score != b.prerank_score) return a.prerank_score > b.prerank_score;
    return a.event_id < b.event_id;
  });
  if (candidates.size() > config.final_k) candidates.resize(config.final_k);
  return candidates;
}

}  // namespace vmem

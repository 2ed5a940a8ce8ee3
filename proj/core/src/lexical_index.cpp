// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/lexical_index.hpp"

#include <cmath>

#include "vmem/text.hpp"

namespace vmem {

DocTerms analyze_document(std::string_view text) {
  DocTerms doc;
  std::unordered_map<std::string, std::size_t> slot;
  for (auto& tok : text::tokenize(text)) {
    ++doc.length;
    auto [it, inserted] = slot.try_emplace(tok, doc.term_freqs.size());
    if (inserted) {
      doc.term_freqs.emplace_back(std::move(tok), 1);
    } else {
      ++doc.term_freqs[it->second].second;
    }
  }
  return doc;
}

void LexicalIndex::add(EventId id, const DocTerms& doc) {
  for (const auto& [term, tf] : doc.term_freqs) add_posting(term, id, tf);
  set_document_length(id, doc.length);
}

void LexicalIndex::add_posting(const std::string& term, EventId id, int tf) {
  postings_[term].push_back({id, tf});
}

void LexicalIndex::set_document_length(EventId id, int length) {
  auto [it, inserted] = doc_lengths_.try_emplace(id, length);
  if (!inserted) {
    total_length_ -= it->second;
    it->second = length;
  }
  total_length_ += length;
}

double LexicalIndex::average_length() const {
  if (doc_lengths_.empty()) return 0.0;
  return static_cast<double>(total_length_) / static_cast<double>(doc_lengths_.size());
}

std::size_t LexicalIndex::document_frequency(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  return it == postings_.end() ? 0 : it->second.size();
}

double LexicalIndex::idf(std::string_view term) const {
  double n = static_cast<double>(doc_lengths_.size());
  double df = static_cast<double>(document_frequency(term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<LexicalHit> LexicalIndex::search(std::string_view query, std::size_t k) const {
  std::vector<LexicalHit> hits;
  if (k == 0) return hits;
  DocTerms q = analyze_document(query);
  if (q.term_freqs.empty() || doc_lengths_.empty()) return hits;

  const double k1 = params_.k1;
  const double b = params_.b;
  const double avgdl = average_length();
  std::unordered_map<EventId, double> scores;
  for (const auto& [term, unused] : q.term_freqs) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double w = idf(term);
    for (const Posting& p : it->second) {
      const double tf = p.tf;
      const double dl = doc_lengths_.at(p.id);
      scores[p.id] += w * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * dl / avgdl));
    }
  }
  hits.reserve(scores.size());
  for (const auto& [id, s] : scores) hits.push_back({id, s, 0});
  rank_top_k(hits, k, [](const LexicalHit& h) { return h.bm25_score; });
  return hits;
}

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vmem/types.hpp"

namespace vmem {

struct LexicalHit {
  EventId event_id = 0;
  double bm25_score = 0.0;
  int rank = 0;  // 1-based
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// Term statistics of one document, in first-occurrence order.
struct DocTerms {
  std::vector<std::pair<std::string, int>> term_freqs;
  int length = 0;
};

DocTerms analyze_document(std::string_view text);

/// Inverted index with BM25 ranking. Query tokens are OR-combined and
/// deduplicated (first occurrence order). For each document containing at
/// least one query term:
///
///   score = sum over query terms t in order of
///           idf(t) * (tf * (k1 + 1)) / (tf + k1 * (1 - b + b * dl / avgdl))
///   idf(t) = log(1 + (N - df + 0.5) / (df + 0.5))
///
/// Ties break by ascending event id.
class LexicalIndex {
 public:
  explicit LexicalIndex(Bm25Params params = {}) : params_(params) {}

  void add(EventId id, const DocTerms& doc);
  /// Loading path: postings must arrive in ascending id per term.
  void add_posting(const std::string& term, EventId id, int tf);
  void set_document_length(EventId id, int length);

  std::vector<LexicalHit> search(std::string_view query, std::size_t k) const;

  double idf(std::string_view term) const;
  std::size_t document_frequency(std::string_view term) const;
  std::size_t document_count() const { return doc_lengths_.size(); }
  double average_length() const;
  const Bm25Params& params() const { return params_; }

 private:
  struct Posting {
    EventId id;
    int tf;
  };

  Bm25Params params_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::unordered_map<EventId, int> doc_lengths_;
  long long total_length_ = 0;
};

/// Orders hits by score descending, id ascending, keeps k and assigns ranks.
template <typename Hit, typename ScoreFn>
void rank_top_k(std::vector<Hit>& hits, std::size_t k, ScoreFn score);

}  // namespace vmem

#include <algorithm>

namespace vmem {

template <typename Hit, typename ScoreFn>
void rank_top_k(std::vector<Hit>& hits, std::size_t k, ScoreFn score) {
  auto better = [&](const Hit& a, const Hit& b) {
    double sa = score(a);
    double sb = score(b);
    if (sa != sb) return sa > sb;
    return a.event_id < b.event_id;
  };
  if (hits.size() > k) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(),
                      better);
    hits.resize(k);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }
  for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = static_cast<int>(i) + 1;
}

}  // namespace vmem

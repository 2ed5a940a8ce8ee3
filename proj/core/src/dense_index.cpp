// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/dense_index.hpp"

#include "vmem/lexical_index.hpp"

namespace vmem {

void DenseIndex::add(EventId id, const DenseVector& v) {
  auto [it, inserted] = slot_.try_emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    vectors_.push_back(v);
  } else {
    vectors_[it->second] = v;
  }
}

std::vector<DenseHit> DenseIndex::search(const DenseVector& query, std::size_t k) const {
  std::vector<DenseHit> hits;
  if (k == 0 || ids_.empty()) return hits;
  hits.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    hits.push_back({ids_[i], cosine(query, vectors_[i]), 0});
  }
  rank_top_k(hits, k, [](const DenseHit& h) { return h.cosine; });
  return hits;
}

const DenseVector* DenseIndex::find(EventId id) const {
  auto it = slot_.find(id);
  return it == slot_.end() ? nullptr : &vectors_[it->second];
}

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "vmem/ngram.hpp"
#include "vmem/types.hpp"

namespace vmem {

struct DenseHit {
  EventId event_id = 0;
  double cosine = 0.0;
  int rank = 0;  // 1-based
};

/// Exact cosine scan over every stored vector. Ties break by ascending id.
class DenseIndex {
 public:
  /// Stores `v` as given; callers pass unit-norm vectors so that a reload
  /// from storage reproduces the index bit for bit.
  void add(EventId id, const DenseVector& v);
  std::vector<DenseHit> search(const DenseVector& query, std::size_t k) const;

  const DenseVector* find(EventId id) const;
  std::size_t size() const { return ids_.size(); }

 private:
  std::vector<EventId> ids_;
  std::vector<DenseVector> vectors_;
  std::unordered_map<EventId, std::size_t> slot_;
};

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/dense_index.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vmem/embedder.hpp"

namespace vmem {
namespace {

TEST(DenseIndex, SelfSimilarity) {
  HashEmbedder e;
  DenseIndex idx;
  idx.add(1, e.embed("Alice moved to Lisbon").normalized());
  auto hits = idx.search(e.embed("Alice moved to Lisbon").normalized(), 5);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].event_id, 1);
  EXPECT_NEAR(hits[0].cosine, 1.0, 1e-6);
}

TEST(DenseIndex, EmptyAndOversizedK) {
  HashEmbedder e;
  DenseIndex idx;
  EXPECT_TRUE(idx.search(e.embed("x"), 3).empty());
  idx.add(1, e.embed("a b c").normalized());
  idx.add(2, e.embed("d e f").normalized());
  EXPECT_EQ(idx.search(e.embed("a"), 10).size(), 2u);
}

TEST(DenseIndex, OracleEquivalence) {
  HashEmbedder e;
  auto texts = oracle::random_texts(21, 1000);
  DenseIndex idx;
  std::vector<std::pair<EventId, DenseVector>> rows;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    DenseVector v = e.embed(texts[i]).normalized();
    idx.add(static_cast<EventId>(i + 1), v);
    rows.emplace_back(static_cast<EventId>(i + 1), v);
  }
  for (const auto& q : oracle::random_texts(22, 10, 1, 5)) {
    DenseVector qv = e.embed(q).normalized();
    auto got = idx.search(qv, 100);
    auto want = oracle::cosine_scan(rows, qv, 100);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].event_id, want[i].id);
      EXPECT_EQ(got[i].cosine, want[i].score);
      EXPECT_EQ(got[i].rank, static_cast<int>(i + 1));
    }
  }
}

TEST(DenseIndex, DuplicateVectorsTieBreakById) {
  HashEmbedder e;
  DenseIndex idx;
  for (EventId id : {5, 3, 9}) idx.add(id, e.embed("same").normalized());
  auto hits = idx.search(e.embed("same").normalized(), 3);
  EXPECT_EQ(hits[0].event_id, 3);
  EXPECT_EQ(hits[1].event_id, 5);
  EXPECT_EQ(hits[2].event_id, 9);
}

}  // namespace
}  // namespace vmem

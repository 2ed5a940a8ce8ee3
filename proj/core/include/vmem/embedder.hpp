// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "vmem/ngram.hpp"

namespace vmem {

/// Text embedder used for dense retrieval and the gate's prediction-error
/// signal. Implementations must be pure (same text, same vector) and safe to
/// call concurrently. Vectors need not be normalized; the index normalizes.
class Embedder {
 public:
  virtual ~Embedder() = default;

  /// Identity recorded in the store; reopening with a different name fails.
  virtual std::string name() const = 0;
  virtual DenseVector embed(std::string_view text) const = 0;
};

/// Default embedder: case-folded hashed char-(3,4,5)-grams.
class HashEmbedder final : public Embedder {
 public:
  static constexpr std::string_view kName = "default-hash-256";

  std::string name() const override { return std::string(kName); }
  DenseVector embed(std::string_view text) const override;
};

/// Hashed word unigrams and bigrams. A second built-in for ablation grids.
class WordHashEmbedder final : public Embedder {
 public:
  static constexpr std::string_view kName = "hash-words-256";

  std::string name() const override { return std::string(kName); }
  DenseVector embed(std::string_view text) const override;
};

/// Built-in embedder by name, or nullptr if unknown.
std::shared_ptr<const Embedder> make_builtin_embedder(std::string_view name);

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/embedder.hpp"

#include "vmem/text.hpp"

namespace vmem {
namespace {

constexpr std::uint64_t kWordSeed = 0x766d656d2d776f72ULL;  // "vmem-wor"

void add_feature(DenseVector& acc, std::string_view feature) {
  std::uint64_t h = hash64(feature, kWordSeed);
  acc[h & (kVectorDim - 1)] += (h >> 63) != 0 ? -1.0 : 1.0;
}

}  // namespace

DenseVector HashEmbedder::embed(std::string_view text) const {
  return ngram_vector(text, NgramOptions{.fold_case = true});
}

DenseVector WordHashEmbedder::embed(std::string_view text) const {
  auto tokens = text::tokenize(text);
  if (tokens.empty()) return DenseVector::canonical();
  DenseVector acc;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    add_feature(acc, tokens[i]);
    if (i + 1 < tokens.size()) add_feature(acc, tokens[i] + " " + tokens[i + 1]);
  }
  return acc.normalized();
}

std::shared_ptr<const Embedder> make_builtin_embedder(std::string_view name) {
  if (name == HashEmbedder::kName) return std::make_shared<HashEmbedder>();
  if (name == WordHashEmbedder::kName) return std::make_shared<WordHashEmbedder>();
  return nullptr;
}

}  // namespace vmem

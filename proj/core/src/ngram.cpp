// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/ngram.hpp"

#include <cmath>
#include <string>

#include "vmem/text.hpp"

namespace vmem {

double DenseVector::norm() const {
  double sq = 0.0;
  for (double v : values_) sq += v * v;
  return std::sqrt(sq);
}

DenseVector DenseVector::normalized() const {
  double n = norm();
  if (n == 0.0 || !std::isfinite(n)) return canonical();
  DenseVector out;
  for (std::size_t i = 0; i < kVectorDim; ++i) out.values_[i] = values_[i] / n;
  return out;
}

DenseVector DenseVector::canonical() {
  DenseVector v;
  v.values_[0] = 1.0;
  return v;
}

double cosine(const DenseVector& a, const DenseVector& b) {
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < kVectorDim; ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

std::uint64_t hash64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

DenseVector ngram_vector(std::string_view input, const NgramOptions& options) {
  if (input.empty()) return DenseVector::canonical();
  std::u32string cps = U" ";
  cps += text::decode_utf8(options.fold_case ? text::fold_case(input) : std::string(input));
  cps += U' ';

  DenseVector acc;
  std::string gram;
  for (std::size_t n = options.min_n; n <= options.max_n; ++n) {
    if (cps.size() < n) break;
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      gram.clear();
      for (std::size_t k = 0; k < n; ++k) text::append_utf8(gram, cps[i + k]);
      std::uint64_t h = hash64(gram, kNgramSeed);
      double sign = (h >> 63) != 0 ? -1.0 : 1.0;
      acc[h & (kVectorDim - 1)] += sign;
    }
  }
  return acc.normalized();
}

}  // namespace vmem

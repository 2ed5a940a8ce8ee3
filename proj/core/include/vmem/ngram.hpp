// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace vmem {

inline constexpr std::size_t kVectorDim = 256;

/// Fixed-width dense vector. Stored and query vectors are kept unit-norm.
class DenseVector {
 public:
  DenseVector() { values_.fill(0.0); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double, kVectorDim> values() const { return values_; }
  std::span<double, kVectorDim> values() { return values_; }

  double norm() const;
  /// Unit-norm copy; a zero vector becomes the canonical vector (e0).
  DenseVector normalized() const;

  static DenseVector canonical();

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::array<double, kVectorDim> values_;
};

/// Cosine similarity. Accumulates dot and both squared norms in index order.
double cosine(const DenseVector& a, const DenseVector& b);

/// 64-bit FNV-1a over the bytes, seeded, followed by a splitmix64 finalizer.
std::uint64_t hash64(std::string_view bytes, std::uint64_t seed);

inline constexpr std::uint64_t kNgramSeed = 0x766d656d2d6e6772ULL;  // "vmem-ngr"

struct NgramOptions {
  bool fold_case = true;
  std::size_t min_n = 3;
  std::size_t max_n = 5;
};

/// Signed feature-hashed bag of character (3,4,5)-grams over the text padded
/// with one space each side, L2-normalized. Each gram lands in bucket
/// `h & 255` with sign `+1` if bit 63 of `h` is clear, `-1` otherwise.
/// Empty text yields the canonical vector.
DenseVector ngram_vector(std::string_view text, const NgramOptions& options = {});

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/types.hpp"

#include <array>
#include <utility>

namespace vmem {
namespace {

constexpr std::array<std::pair<Category, std::string_view>, 8> kCategoryNames{{
    {Category::kCommitment, "commitment"},
    {Category::kCorrection, "correction"},
    {Category::kDecision, "decision"},
    {Category::kRelationship, "relationship"},
    {Category::kQuestion, "question"},
    {Category::kNoise, "noise"},
    {Category::kStatement, "statement"},
    {Category::kOther, "other"},
}};

constexpr std::array<std::pair<Modality, std::string_view>, 4> kModalityNames{{
    {Modality::kMessage, "message"},
    {Modality::kSummary, "summary"},
    {Modality::kProfile, "profile"},
    {Modality::kTimeline, "timeline"},
}};

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [value, name] : kCategoryNames) {
    if (value == c) return name;
  }
  return "other";
}

std::string_view to_string(Modality m) {
  for (const auto& [value, name] : kModalityNames) {
    if (value == m) return name;
  }
  return "message";
}

std::optional<Category> parse_category(std::string_view s) {
  for (const auto& [value, name] : kCategoryNames) {
    if (name == s) return value;
  }
  return std::nullopt;
}

std::optional<Modality> parse_modality(std::string_view s) {
  for (const auto& [value, name] : kModalityNames) {
    if (name == s) return value;
  }
  return std::nullopt;
}

}  // namespace vmem

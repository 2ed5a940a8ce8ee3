// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/predictive.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "vmem/text.hpp"

namespace vmem {
namespace {

using FK = FingerprintKind;

bool has(const std::set<FactFingerprint>& s, FK k, std::string v) { return s.contains({k, std::move(v)}); }

TEST(Fingerprints, MeetingExample) {
  auto fp = fingerprints("Meeting moved to March 3, 3pm, room 401");
  EXPECT_TRUE(has(fp, FK::kDate, "march 3"));
  EXPECT_TRUE(has(fp, FK::kNumber, "3pm"));
  EXPECT_TRUE(has(fp, FK::kNumber, "401"));
  EXPECT_TRUE(has(fp, FK::kEventKeyword, "meeting"));
  EXPECT_FALSE(has(fp, FK::kNumber, "3"));
}

TEST(Fingerprints, EmptyAndDedup) {
  EXPECT_TRUE(fingerprints("").empty());
  auto fp = fingerprints("401 and 401 and 401");
  EXPECT_EQ(std::count_if(fp.begin(), fp.end(), [](const auto& f) { return f.kind == FK::kNumber; }), 1);
}

TEST(Fingerprints, ProperNounsCaseFolded) {
  auto fp = fingerprints("We flew with Alice Smith to Lisbon.");
  EXPECT_TRUE(has(fp, FK::kProperNoun, "alice smith"));
  EXPECT_TRUE(has(fp, FK::kProperNoun, "lisbon"));
  EXPECT_FALSE(has(fp, FK::kProperNoun, "we"));
}

TEST(Fingerprints, Definitional) {
  EXPECT_TRUE(has(fingerprints("A quokka is a marsupial"), FK::kDefinitional, "quokka := marsupial"));
  EXPECT_TRUE(has(fingerprints("Ciao means goodbye"), FK::kDefinitional, "ciao := goodbye"));
}

TEST(Fingerprints, ValuesNonEmpty) {
  for (const auto& t : oracle::random_texts(61, 300))
    for (const auto& f : fingerprints(t)) EXPECT_FALSE(f.value.empty());
}

// Reference sigma computed from the fingerprint sets alone (no contradiction term).
double reference_sigma(const std::set<FactFingerprint>& fp, const std::set<FactFingerprint>& seen,
                       std::size_t chars, const PredictiveConfig& c) {
  std::size_t novel = 0;
  for (const auto& f : fp) novel += seen.contains(f) ? 0 : 1;
  double s = c.w_fact * double(novel) / double(std::max<std::size_t>(1, fp.size()));
  if (chars > c.length_chars) s += c.b_length;
  if (fp.size() >= c.detail_fingerprints) s += c.b_detail;
  if (std::any_of(fp.begin(), fp.end(), [](const auto& f) { return f.kind == FK::kEventKeyword; })) s += c.b_event;
  return std::clamp(s, 0.0, 1.0);
}

TEST(Surprise, FirstEventFullyNovel) {
  SurpriseScorer sc;
  // 2 fingerprints (number, proper noun), no bonus.
  EXPECT_NEAR(sc.observe("we paid 40 to Lisbon Tours"), 0.6, 1e-12);
}

TEST(Surprise, RepeatScoresBonusesOnly) {
  SurpriseScorer sc;
  const std::string t = "Meeting moved to March 3, 3pm, room 401";
  sc.observe(t);
  PredictiveConfig c;
  EXPECT_NEAR(sc.observe(t), c.b_detail + c.b_event, 1e-12);
}

TEST(Surprise, NoFingerprintsNoBonusIsZero) {
  SurpriseScorer sc;
  EXPECT_EQ(sc.observe("sounds good to me"), 0.0);
}

TEST(Surprise, ContradictionBonusOnUpdate) {
  PredictiveConfig c;
  SurpriseScorer sc(c);
  sc.observe("meeting in room 401");
  const std::string upd = "actually, the meeting is in room 502";
  ASSERT_TRUE(sc.has_update_verb(upd));
  auto fp = fingerprints(upd);
  const double base = reference_sigma(fp, fingerprints("meeting in room 401"), text::codepoint_length(upd), c);
  EXPECT_NEAR(sc.observe(upd), std::min(1.0, base + c.b_contradiction), 1e-12);
}

TEST(Surprise, UpdateVerbWithoutConflictNoBonus) {
  PredictiveConfig c;
  SurpriseScorer sc(c);
  sc.observe("meeting in room 401");
  const std::string upd = "actually, the meeting is in room 401";
  const double base = reference_sigma(fingerprints(upd), fingerprints("meeting in room 401"),
                                      text::codepoint_length(upd), c);
  EXPECT_NEAR(sc.observe(upd), base, 1e-12);
}

TEST(Surprise, AssertionConflictCounts) {
  PredictiveConfig c;
  SurpriseScorer sc(c);
  sc.observe("Alice lives in Lisbon", "bob");
  const std::string upd = "Alice moved to Porto now";
  const double base = reference_sigma(fingerprints(upd), fingerprints("Alice lives in Lisbon"),
                                      text::codepoint_length(upd), c);
  EXPECT_NEAR(sc.observe(upd, "bob"), std::min(1.0, base + c.b_contradiction), 1e-12);
}

TEST(Surprise, MatchesReferenceWithoutUpdates) {
  PredictiveConfig c;
  c.update_verbs.clear();
  SurpriseScorer sc(c);
  std::set<FactFingerprint> seen;
  for (const auto& t : oracle::random_texts(62, 300, 3, 40)) {
    auto fp = fingerprints(t);
    ASSERT_NEAR(sc.observe(t), reference_sigma(fp, seen, text::codepoint_length(t), c), 1e-12) << t;
    seen.insert(fp.begin(), fp.end());
  }
  EXPECT_EQ(sc.fact_count(), seen.size());
}

TEST(Surprise, OrderDependence) {
  SurpriseScorer a, b;
  const std::string x = "Trip to Lisbon on 2024-05-01";
  const std::string y = "We loved Lisbon";
  const double ax = a.observe(x), ay = a.observe(y);
  const double by = b.observe(y), bx = b.observe(x);
  EXPECT_NE(ay, by);
  EXPECT_NE(ax, bx);
}

EventInput msg(std::string text, Timestamp ts) {
  EventInput in;
  in.text = std::move(text);
  in.sender = "a";
  in.timestamp = ts;
  return in;
}

TEST(SurpriseIndex, TemporalOrderNotIdOrder) {
  auto s = Store::open(":memory:");
  s.append_event(msg("Lisbon was lovely", 200));
  s.append_event(msg("Trip to Lisbon on 2024-05-01", 100));
  EXPECT_EQ(build_surprise_index(s), 2u);
  SurpriseScorer ref;
  const double first = ref.observe("Trip to Lisbon on 2024-05-01");
  const double second = ref.observe("Lisbon was lovely");
  EXPECT_EQ(s.surprise(2), first);
  EXPECT_EQ(s.surprise(1), second);
}

TEST(SurpriseIndex, RangeAndSkipsNonMessages) {
  auto s = Store::open(":memory:");
  Timestamp ts = 0;
  for (const auto& t : oracle::random_texts(63, 200, 1, 60)) s.append_event(msg(t, ts += 10));
  EventInput sum = msg("summary text Lisbon", ts + 1);
  sum.modality = Modality::kSummary;
  auto sid = s.append_event(sum).id;
  EXPECT_EQ(build_surprise_index(s), 200u);
  EXPECT_FALSE(s.surprise(sid));
  for (const auto& sc : s.surprise_scores()) {
    EXPECT_GE(sc.sigma, 0.0);
    EXPECT_LE(sc.sigma, 1.0);
  }
  auto first = s.surprise_scores();
  build_surprise_index(s);
  auto again = s.surprise_scores();
  ASSERT_EQ(first.size(), again.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].sigma, again[i].sigma);
}

}  // namespace
}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/engram.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace vmem {
namespace {

EventInput msg(std::string text, std::string sender, Timestamp ts = 0) {
  EventInput in;
  in.text = std::move(text);
  in.sender = std::move(sender);
  in.timestamp = ts;
  return in;
}

using P = Preference;

TEST(Preferences, Patterns) {
  EXPECT_EQ(extract_preferences("I love hiking"), (std::vector<P>{{"hiking", "likes"}}));
  EXPECT_EQ(extract_preferences("I really prefer green tea"), (std::vector<P>{{"tea", "prefers green tea"}}));
  EXPECT_EQ(extract_preferences("I can't stand olives."), (std::vector<P>{{"olives", "dislikes"}}));
  EXPECT_EQ(extract_preferences("I don't like mornings"), (std::vector<P>{{"mornings", "dislikes"}}));
  EXPECT_EQ(extract_preferences("I hate traffic"), (std::vector<P>{{"traffic", "dislikes"}}));
  EXPECT_TRUE(extract_preferences("She loves hiking").empty());
  EXPECT_TRUE(extract_preferences("ok").empty());
}

TEST(MeanPool, MatchesDirectFormula) {
  std::vector<DenseVector> vs;
  for (const auto& t : oracle::random_texts(90, 7)) {
    DenseVector v = ngram_vector(t, kStyleNgrams);
    for (std::size_t i = 0; i < kVectorDim; ++i) v[i] *= 3.0;  // un-normalize
    vs.push_back(v);
  }
  std::vector<double> acc(kVectorDim, 0.0);
  for (const auto& v : vs) {
    double n = 0;
    for (std::size_t i = 0; i < kVectorDim; ++i) n += v[i] * v[i];
    n = std::sqrt(n);
    for (std::size_t i = 0; i < kVectorDim; ++i) acc[i] += v[i] / n / double(vs.size());
  }
  double n = 0;
  for (double x : acc) n += x * x;
  n = std::sqrt(n);
  const DenseVector got = mean_pool(vs);
  for (std::size_t i = 0; i < kVectorDim; ++i) EXPECT_NEAR(got[i], acc[i] / n, 1e-9);
  EXPECT_EQ(mean_pool({}), DenseVector::canonical());
}

TEST(ProfileText, Format) {
  EntityProfile p{.entity = "Alice", .attributes = {{"hiking", "likes"}, {"tea", "prefers green tea"}}};
  EXPECT_EQ(profile_text(p), "Alice likes hiking. Alice prefers green tea.");
  EXPECT_EQ(profile_text(EntityProfile{.entity = "Bob"}), "");
}

TEST(UpdateEngrams, ProfilesAndStyle) {
  auto s = Store::open(":memory:");
  s.append_event(msg("I love hiking", "Alice", 10));
  s.append_event(msg("Anyway, see you soon!", "Alice", 20));
  s.append_event(msg("lol ok", "bob", 30));
  EXPECT_EQ(update_engrams(s), 2u);
  auto p = s.profile("Alice");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->attributes, (std::map<std::string, std::string>{{"hiking", "likes"}}));
  ASSERT_TRUE(p->profile_event_id);
  const Event pe = s.get_event(*p->profile_event_id);
  EXPECT_EQ(pe.modality, Modality::kProfile);
  EXPECT_EQ(pe.text, "Alice likes hiking.");
  EXPECT_FALSE(s.profile("carol"));

  auto style = s.style_vector("Alice");
  ASSERT_TRUE(style);
  EXPECT_NEAR(style->norm(), 1.0, 1e-6);
  const DenseVector want = mean_pool({ngram_vector("I love hiking", kStyleNgrams),
                                      ngram_vector("Anyway, see you soon!", kStyleNgrams)});
  for (std::size_t i = 0; i < kVectorDim; ++i) EXPECT_NEAR((*style)[i], want[i], 1e-9);
}

TEST(UpdateEngrams, SingleMessageStyleEqualsItsVector) {
  auto s = Store::open(":memory:");
  s.append_event(msg("Good Morning, Team.", "carol"));
  update_engrams(s);
  EXPECT_NEAR(*style_score(s, "carol", "Good Morning, Team."), 1.0, 1e-12);
}

TEST(UpdateEngrams, Idempotent) {
  auto s = Store::open(":memory:");
  s.append_event(msg("I love hiking", "Alice", 10));
  update_engrams(s);
  const auto n = s.event_count();
  const auto p1 = s.profile("Alice");
  const auto v1 = s.style_vector("Alice");
  update_engrams(s);
  EXPECT_EQ(s.event_count(), n);
  EXPECT_EQ(s.profile("Alice"), p1);
  EXPECT_EQ(s.style_vector("Alice"), v1);
}

TEST(UpdateEngrams, LaterPreferenceOverrides) {
  auto s = Store::open(":memory:");
  s.append_event(msg("I love olives", "Alice", 10));
  s.append_event(msg("I hate olives", "Alice", 20));
  update_engrams(s);
  EXPECT_EQ(s.profile("Alice")->attributes.at("olives"), "dislikes");
}

TEST(StyleScore, SpeakerOrdering) {
  auto s = Store::open(":memory:");
  const std::vector<std::string> terse{"yeah ok see u there", "lol no idea", "k cool gonna be late",
                                       "nah im good", "ya sounds fine", "brb grabbing food"};
  const std::vector<std::string> formal{"Good afternoon, Professor; I shall attend.",
                                        "Thank you kindly; the Report is Attached.",
                                        "Regards, I Remain at Your Disposal.",
                                        "Please Confirm the Agenda, Colleagues.",
                                        "Dear Committee, Minutes Follow Below.",
                                        "Kindly Acknowledge Receipt, Sincerely."};
  for (std::size_t i = 0; i < terse.size(); ++i) {
    if (i < 4) s.append_event(msg(terse[i], "tim"));
    if (i < 4) s.append_event(msg(formal[i], "fran"));
  }
  update_engrams(s);
  double own = 0, other = 0;
  for (std::size_t i = 4; i < 6; ++i) {
    own += *style_score(s, "tim", terse[i]);
    other += *style_score(s, "tim", formal[i]);
  }
  EXPECT_GT(own, other);
  EXPECT_GT(*style_score(s, "tim", terse[0]), 0.0);
  EXPECT_FALSE(style_score(s, "nobody", "x"));
}

}  // namespace
}  // namespace vmem

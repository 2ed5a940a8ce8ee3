// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/fusion.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"

namespace vmem {
namespace {

std::vector<LexicalHit> lex(std::initializer_list<EventId> ids) {
  std::vector<LexicalHit> out;
  int r = 0;
  for (EventId id : ids) out.push_back({id, 1.0, ++r});
  return out;
}

std::vector<DenseHit> den(std::initializer_list<EventId> ids) {
  std::vector<DenseHit> out;
  int r = 0;
  for (EventId id : ids) out.push_back({id, 1.0, ++r});
  return out;
}

std::map<EventId, int> ranks_of(const auto& hits) {
  std::map<EventId, int> m;
  for (const auto& h : hits) m[h.event_id] = h.rank;
  return m;
}

const Candidate* find(const std::vector<Candidate>& cs, EventId id) {
  for (const auto& c : cs)
    if (c.event_id == id) return &c;
  return nullptr;
}

TEST(Rrf, HandValues) {
  auto out = rrf_fuse(lex({7}), den({7}), nullptr, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].score, 2.0 / 61.0, 1e-15);
  EXPECT_NEAR(out[0].score, 0.032787, 1e-6);

  out = rrf_fuse({}, den({1, 2, 9}), nullptr, 1);
  EXPECT_NEAR(find(out, 9)->score, 1.0 / 63.0, 1e-15);
  EXPECT_FALSE(find(out, 9)->fts_rank);
  EXPECT_EQ(find(out, 9)->vec_rank, 3);
}

TEST(Rrf, SeparationNeedsMoreThanFiveSenders) {
  auto sep = lex({3});
  auto five = rrf_fuse(lex({1}), den({2}), &sep, 5);
  EXPECT_FALSE(find(five, 3));
  auto six = rrf_fuse(lex({1}), den({2}), &sep, 6);
  ASSERT_TRUE(find(six, 3));
  EXPECT_NEAR(find(six, 3)->score, 0.8 / 61.0, 1e-15);
  EXPECT_EQ(find(six, 3)->sep_rank, 1);
  auto three = rrf_fuse(lex({1}), den({2}), &sep, 3);
  EXPECT_EQ(three.size(), 2u);
}

TEST(Rrf, TwentyScenariosMatchOracle) {
  std::mt19937_64 rng(2024);
  for (int scenario = 0; scenario < 20; ++scenario) {
    FusionConfig cfg;
    cfg.w_fts = 0.5 + double(rng() % 100) / 50.0;
    cfg.w_vec = 0.5 + double(rng() % 100) / 50.0;
    auto make = [&](std::size_t n) {
      std::vector<EventId> ids(40);
      std::iota(ids.begin(), ids.end(), 1);
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(n);
      return ids;
    };
    std::vector<LexicalHit> l, s;
    std::vector<DenseHit> d;
    int r = 0;
    for (EventId id : make(rng() % 30)) l.push_back({id, 0, ++r});
    r = 0;
    for (EventId id : make(rng() % 30)) d.push_back({id, 0, ++r});
    r = 0;
    for (EventId id : make(rng() % 30)) s.push_back({id, 0, ++r});
    const std::size_t senders = rng() % 10;
    const bool use_sep = senders > 5;
    auto out = rrf_fuse(l, d, &s, senders, cfg);

    std::vector<std::map<EventId, int>> lists{ranks_of(l), ranks_of(d)};
    std::vector<double> w{cfg.w_fts, cfg.w_vec};
    if (use_sep) {
      lists.push_back(ranks_of(s));
      w.push_back(0.8 * cfg.w_vec);
    }
    std::set<EventId> all;
    for (const auto& m : lists)
      for (const auto& [id, rk] : m) all.insert(id);
    ASSERT_EQ(out.size(), all.size()) << scenario;
    for (EventId id : all) EXPECT_NEAR(find(out, id)->score, oracle::rrf(lists, w, id), 1e-9) << scenario;
    for (std::size_t i = 1; i < out.size(); ++i) {
      ASSERT_TRUE(out[i - 1].score > out[i].score ||
                  (out[i - 1].score == out[i].score && out[i - 1].event_id < out[i].event_id));
    }
  }
}

TEST(Rrf, UniformWeightsEqualCormack) {
  auto l = lex({4, 2, 8, 1});
  auto d = den({2, 5, 4});
  auto out = rrf_fuse(l, d, nullptr, 2);
  std::map<EventId, double> cormack;
  for (const auto& h : l) cormack[h.event_id] += 1.0 / (60.0 + h.rank);
  for (const auto& h : d) cormack[h.event_id] += 1.0 / (60.0 + h.rank);
  for (const auto& c : out) EXPECT_NEAR(c.score, cormack.at(c.event_id), 1e-12);
}

TEST(Rrf, RankOnlyDependence) {
  auto l = lex({4, 2, 8});
  auto d = den({2, 5});
  auto a = rrf_fuse(l, d, nullptr, 2);
  for (auto& h : l) h.bm25_score *= 17.0;
  for (auto& h : d) h.cosine *= 0.01;
  auto b = rrf_fuse(l, d, nullptr, 2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].event_id, b[i].event_id);
    EXPECT_EQ(a[i].score, b[i].score);
  }
}

std::vector<Candidate> random_candidates(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Candidate> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Candidate c;
    c.event_id = static_cast<EventId>(i + 1);
    c.score = u(rng) / 30.0;
    c.salience = 0.1 + 0.9 * u(rng);
    c.sigma = u(rng) < 0.3 ? 0.0 : u(rng);
    c.timestamp = static_cast<Timestamp>(rng() % 1000);
    c.text = "candidate " + std::to_string(i);
    cs.push_back(c);
  }
  sort_candidates(cs);
  return cs;
}

TEST(Reweight, AllTriggersFalseIsBitwiseIdentity) {
  auto in = random_candidates(1, 100);
  auto out = reweight(in, QueryIntent{}, FusionConfig{}, ReweightInputs{});
  ASSERT_EQ(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(in[i].event_id, out[i].event_id);
    EXPECT_EQ(std::memcmp(&in[i].score, &out[i].score, sizeof(double)), 0);
  }
}

TEST(Reweight, SurpriseClosedForm) {
  auto in = random_candidates(2, 100);
  auto out = reweight(in, QueryIntent{}, FusionConfig{}, ReweightInputs{.surprise_built = true});
  ASSERT_EQ(in.size(), out.size());
  for (const auto& c : in) {
    const double want = c.sigma > 0 ? c.score * (1.0 + 0.2 * c.sigma) : c.score;
    EXPECT_NEAR(find(out, c.event_id)->score, want, 1e-15);
  }
  Candidate half;
  half.event_id = 1;
  half.score = 1.0;
  half.sigma = 0.5;
  EXPECT_NEAR(reweight({half}, {}, {}, {.surprise_built = true})[0].score, 1.1, 1e-15);
}

TEST(Reweight, SurpriseNoOpWhenUnbuilt) {
  auto in = random_candidates(3, 50);
  auto out = reweight(in, QueryIntent{}, FusionConfig{}, ReweightInputs{.surprise_built = false});
  for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(in[i].score, out[i].score);
}

TEST(Reweight, TemporalBoostInsideWindowOnly) {
  auto in = random_candidates(4, 100);
  QueryIntent intent;
  intent.temporal = true;
  intent.time_window = TimeWindow{200, 400};
  auto out = reweight(in, intent, FusionConfig{}, ReweightInputs{});
  for (const auto& c : in) {
    const bool inside = c.timestamp >= 200 && c.timestamp <= 400;
    EXPECT_EQ(find(out, c.event_id)->score, inside ? c.score * 1.3 : c.score);
  }
}

TEST(Reweight, SalienceDrop) {
  auto in = random_candidates(5, 20);
  in[3].salience = 0.04;
  in[7].salience = 0.05;
  auto out = reweight(in, QueryIntent{}, FusionConfig{}, ReweightInputs{});
  EXPECT_FALSE(find(out, in[3].event_id));
  EXPECT_TRUE(find(out, in[7].event_id));
  EXPECT_EQ(out.size(), 19u);
}

TEST(Reweight, PersonalityInjection) {
  auto in = random_candidates(6, 10);
  double top = 0;
  for (const auto& c : in) top = std::max(top, c.score);
  Candidate prof;
  prof.event_id = 500;
  prof.modality = Modality::kProfile;
  Candidate sty;
  sty.event_id = 501;
  QueryIntent intent;
  intent.personality = true;
  auto out = reweight(in, intent, FusionConfig{}, ReweightInputs{.profile_candidates = {prof}, .style_candidates = {sty}});
  ASSERT_TRUE(find(out, 500));
  EXPECT_EQ(find(out, 500)->score, 0.8 * top);
  EXPECT_TRUE(find(out, 500)->injected);
  EXPECT_EQ(find(out, 501)->score, 0.9 * top);
  for (const auto& c : out)
    if (c.injected) EXPECT_LT(c.score, top);

  // Without personality intent nothing is injected.
  auto plain = reweight(in, QueryIntent{}, FusionConfig{}, ReweightInputs{.profile_candidates = {prof}});
  EXPECT_FALSE(find(plain, 500));
}

TEST(Reweight, InjectionBaseOnEmptySet) {
  Candidate prof;
  prof.event_id = 9;
  QueryIntent intent;
  intent.personality = true;
  auto out = reweight({}, intent, FusionConfig{}, ReweightInputs{.profile_candidates = {prof}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].score, 0.8 / 61.0, 1e-15);
}

TEST(Reweight, OrderTemporalBeforeInjection) {
  Candidate a;
  a.event_id = 1;
  a.score = 1.0;
  a.timestamp = 10;
  Candidate prof;
  prof.event_id = 2;
  prof.timestamp = 10;
  QueryIntent intent;
  intent.temporal = true;
  intent.personality = true;
  intent.time_window = TimeWindow{0, 100};
  auto out = reweight({a}, intent, FusionConfig{}, ReweightInputs{.profile_candidates = {prof}});
  // Injection scales the boosted max; the injected candidate is not boosted again.
  EXPECT_NEAR(find(out, 1)->score, 1.3, 1e-15);
  EXPECT_NEAR(find(out, 2)->score, 0.8 * 1.3, 1e-15);
}

TEST(Modality, Factors) {
  EXPECT_EQ(modality_factor(Modality::kSummary, QuestionType::kDetail), 0.7);
  EXPECT_EQ(modality_factor(Modality::kSummary, QuestionType::kSynthesis), 1.2);
  EXPECT_EQ(modality_factor(Modality::kSummary, QuestionType::kGeneral), 1.0);
  for (auto q : {QuestionType::kDetail, QuestionType::kSynthesis, QuestionType::kGeneral})
    EXPECT_EQ(modality_factor(Modality::kMessage, q), 1.0);
}

class ConstantReranker : public Reranker {
 public:
  std::string name() const override { return "const"; }
  double score(std::string_view, const Candidate&) const override { return 0.5; }
};

class ThrowingReranker : public Reranker {
 public:
  std::string name() const override { return "throw"; }
  double score(std::string_view, const Candidate& c) const override {
    if (c.event_id == 2) throw std::runtime_error("nope");
    return 0.001;
  }
};

TEST(Rerank, DetailPenalizesSummaryOnTie) {
  Candidate m{.event_id = 2, .score = 0.01, .modality = Modality::kMessage};
  Candidate s{.event_id = 1, .score = 0.02, .modality = Modality::kSummary};
  ConstantReranker r;
  auto out = rerank("q", {s, m}, &r, QuestionType::kDetail);
  EXPECT_EQ(out[0].event_id, 2);
  EXPECT_NEAR(out[1].score, 0.35, 1e-15);
  auto syn = rerank("q", {s, m}, &r, QuestionType::kSynthesis);
  EXPECT_EQ(syn[0].event_id, 1);
  auto gen = rerank("q", {s, m}, &r, QuestionType::kGeneral);
  EXPECT_EQ(gen[0].score, 0.5);
  EXPECT_EQ(gen[1].score, 0.5);
  EXPECT_EQ(gen[0].event_id, 1);  // tie broken by prerank score
}

TEST(Rerank, FailureKeepsPrerankScore) {
  Candidate a{.event_id = 1, .score = 0.02};
  Candidate b{.event_id = 2, .score = 0.03};
  ThrowingReranker r;
  auto out = rerank("q", {a, b}, &r, QuestionType::kGeneral);
  EXPECT_EQ(out[0].event_id, 2);
  EXPECT_EQ(out[0].score, 0.03);
  EXPECT_EQ(out[1].score, 0.001);
}

TEST(Rerank, TruncatesToFinalK) {
  auto cs = random_candidates(7, 40);
  auto out = rerank("q", cs, nullptr, QuestionType::kGeneral);
  ASSERT_EQ(out.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(out[i].event_id, cs[i].event_id);
}

TEST(Rerank, IdentityEqualsNone) {
  auto cs = random_candidates(8, 40);
  IdentityReranker id;
  auto a = rerank("q", cs, nullptr, QuestionType::kDetail);
  auto b = rerank("q", cs, &id, QuestionType::kDetail);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].event_id, b[i].event_id);
    EXPECT_EQ(a[i].score, b[i].score);
  }
}

TEST(OverlapReranker, AllTermsBeatsNone) {
  OverlapReranker r([](std::string_view t) { return t == "lisbon" ? 3.0 : 1.0; });
  Candidate all{.event_id = 1, .text = "Alice flew to Lisbon"};
  Candidate none{.event_id = 2, .text = "nothing relevant here"};
  Candidate some{.event_id = 3, .text = "Lisbon only"};
  EXPECT_EQ(r.score("alice lisbon", all), 1.0);
  EXPECT_EQ(r.score("alice lisbon", none), 0.0);
  EXPECT_EQ(r.score("alice lisbon alice", some), 0.75);
  EXPECT_EQ(r.score("", all), 0.0);
}

TEST(FusionConfig, Validation) {
  FusionConfig c;
  EXPECT_NO_THROW(c.validate());
  c.k_rrf = 0;
  EXPECT_THROW(c.validate(), Error);
  c = FusionConfig{};
  c.final_k = 0;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace vmem

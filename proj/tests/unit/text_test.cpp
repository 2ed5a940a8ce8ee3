// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/text.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace vmem::text {
namespace {

TEST(Tokenize, LowercasesAndSplitsOnNonAlnum) {
  EXPECT_EQ(tokenize("Alice moved to Lisbon!"), (std::vector<std::string>{"alice", "moved", "to", "lisbon"}));
  EXPECT_EQ(tokenize("room-401, 3pm"), (std::vector<std::string>{"room", "401", "3pm"}));
  EXPECT_TRUE(tokenize("  ...  ").empty());
}

TEST(Tokenize, UnicodeAware) {
  EXPECT_EQ(tokenize("Café ÜBER straße"), (std::vector<std::string>{"café", "über", "straße"}));
  EXPECT_EQ(tokenize("日本語 text"), (std::vector<std::string>{"日本語", "text"}));
}

TEST(Tokenize, MatchesAsciiOracle) {
  for (const auto& t : oracle::random_texts(3, 200)) EXPECT_EQ(tokenize(t), oracle::ascii_tokens(t)) << t;
}

TEST(CodepointLength, CountsCodePoints) {
  EXPECT_EQ(codepoint_length(""), 0u);
  EXPECT_EQ(codepoint_length("abc"), 3u);
  EXPECT_EQ(codepoint_length("café"), 4u);
  EXPECT_EQ(codepoint_length("日本"), 2u);
}

TEST(Utf8, RoundTrip) {
  const std::string s = "héllo wörld ☃ 𝄞";
  EXPECT_EQ(encode_utf8(decode_utf8(s)), s);
}

TEST(SplitWords, StripsPunctuationAndFlagsClauses) {
  auto w = split_words("Hi, Alice. Bob's here!");
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[0].raw, "Hi");
  EXPECT_TRUE(w[0].ends_clause);
  EXPECT_TRUE(w[0].sentence_initial);
  EXPECT_TRUE(w[1].ends_sentence);
  EXPECT_TRUE(w[2].sentence_initial);
  EXPECT_EQ(w[2].raw, "Bob's");
}

TEST(SplitSentences, KeepsTerminators) {
  EXPECT_EQ(split_sentences("One. Two! Three?"), (std::vector<std::string>{"One.", "Two!", "Three?"}));
  EXPECT_EQ(split_sentences("no terminator"), (std::vector<std::string>{"no terminator"}));
}

TEST(FindDates, RecognizesForms) {
  auto kinds = [](std::string_view s) {
    std::vector<std::string> out;
    for (const auto& d : find_dates(s)) out.push_back(d.normalized);
    return out;
  };
  EXPECT_EQ(kinds("Meeting moved to March 3, 3pm"), (std::vector<std::string>{"march 3"}));
  EXPECT_EQ(kinds("on 2024-05-01 and 3/4/2024"), (std::vector<std::string>{"2024-05-01", "3/4/2024"}));
  EXPECT_EQ(kinds("the 5th of June 2023"), (std::vector<std::string>{"june 5 2023"}));
  EXPECT_EQ(kinds("see you Friday"), (std::vector<std::string>{"friday"}));
  EXPECT_EQ(kinds("last week and 3 days ago"), (std::vector<std::string>{"last week", "3 days ago"}));
  EXPECT_EQ(kinds("yesterday"), (std::vector<std::string>{"yesterday"}));
  EXPECT_TRUE(kinds("I may go").empty());
  EXPECT_EQ(kinds("back in August"), (std::vector<std::string>{"august"}));
}

TEST(FindNumbers, ExcludesDateWords) {
  auto words = split_words("Meeting moved to March 3, 3pm, room 401");
  auto nums = find_numbers(words, find_dates(words));
  EXPECT_EQ(nums, (std::vector<std::string>{"3pm", "401"}));
}

TEST(FoldCase, Unicode) {
  EXPECT_EQ(fold_case("ÀBC"), "àbc");
  EXPECT_EQ(fold_case("Straße"), "straße");
}

TEST(ContainsPhrase, MatchesContiguousWords) {
  auto w = split_words("well, we decided to go");
  EXPECT_TRUE(contains_phrase(w, "we decided"));
  EXPECT_FALSE(contains_phrase(w, "decided we"));
}

}  // namespace
}  // namespace vmem::text

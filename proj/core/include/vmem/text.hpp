// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// Text primitives shared across the engine: UTF-8 handling, lexical
// tokenization, a light word scanner and the date/number patterns used by
// salience scoring, fact fingerprinting and query-intent detection.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vmem::text {

/// Decodes UTF-8; invalid bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view s);

/// Number of Unicode code points in a UTF-8 string.
std::size_t codepoint_length(std::string_view s);

/// Unicode simple case folding of a whole string.
std::string fold_case(std::string_view s);

/// Lexical tokens: maximal runs of alphanumeric code points, case-folded.
/// Everything else is a boundary. No stemming, no stopwords.
std::vector<std::string> tokenize(std::string_view s);

/// A whitespace-delimited word with surrounding punctuation stripped.
struct Word {
  std::string raw;    // as written, minus leading/trailing punctuation
  std::string lower;  // case-folded raw
  bool sentence_initial = false;
  bool ends_clause = false;  // trailing , ; : . ! ? in the source
  bool ends_sentence = false;
};

std::vector<Word> split_words(std::string_view s);

/// Splits on . ! ? and newlines; keeps the terminator, trims whitespace.
std::vector<std::string> split_sentences(std::string_view s);

bool is_capitalized(std::string_view word);
bool has_digit(std::string_view word);

enum class DateKind { kAbsolute, kWeekday, kRelative };

struct DateMatch {
  DateKind kind;
  std::string normalized;  // e.g. "march 3", "2024-05-01", "friday", "last week"
  std::size_t first_word;  // index into split_words()
  std::size_t last_word;   // inclusive
};

std::vector<DateMatch> find_dates(const std::vector<Word>& words);
inline std::vector<DateMatch> find_dates(std::string_view s) { return find_dates(split_words(s)); }

/// Words containing a digit that are not part of a date match, lowercased.
std::vector<std::string> find_numbers(const std::vector<Word>& words,
                                      const std::vector<DateMatch>& dates);

/// Month index 1..12 for a month name or three-letter abbreviation, else 0.
int month_index(std::string_view lower_word);

/// True if `needle` (space-separated lowercase words) occurs as a contiguous
/// word sequence in `words`.
bool contains_phrase(const std::vector<Word>& words, std::string_view needle);

}  // namespace vmem::text

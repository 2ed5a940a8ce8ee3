// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/text.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <array>
#include <cctype>

namespace vmem::text {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0x00A0 || c == 0x3000 || (c >= 0x2000 && c <= 0x200B);
}

bool is_edge_punct(char32_t c) { return !u_isalnum(static_cast<UChar32>(c)); }

constexpr std::array<std::string_view, 12> kMonths{
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

constexpr std::array<std::string_view, 7> kWeekdays{
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// "3", "3rd", "21st" -> 3 / 21; 0 if not a day-of-month.
int day_of_month(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && w[i] >= '0' && w[i] <= '9') ++i;
  if (i == 0 || i > 2) return 0;
  std::string_view suffix = w.substr(i);
  if (!suffix.empty() && suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return 0;
  }
  int d = std::stoi(std::string(w.substr(0, i)));
  return (d >= 1 && d <= 31) ? d : 0;
}

bool is_year(std::string_view w) {
  if (w.size() != 4 || !all_digits(w)) return false;
  return w[0] == '1' || w[0] == '2';
}

bool is_iso_date(std::string_view w) {
  return w.size() == 10 && all_digits(w.substr(0, 4)) && w[4] == '-' &&
         all_digits(w.substr(5, 2)) && w[7] == '-' && all_digits(w.substr(8, 2));
}

bool is_slash_date(std::string_view w) {
  // d/m, dd/mm, dd/mm/yy, dd/mm/yyyy
  std::size_t first = w.find('/');
  if (first == std::string_view::npos || first == 0 || first > 2) return false;
  std::string_view rest = w.substr(first + 1);
  std::size_t second = rest.find('/');
  std::string_view mid = rest.substr(0, second);
  if (mid.empty() || mid.size() > 2 || !all_digits(w.substr(0, first)) || !all_digits(mid)) {
    return false;
  }
  if (second == std::string_view::npos) return true;
  std::string_view year = rest.substr(second + 1);
  return (year.size() == 2 || year.size() == 4) && all_digits(year);
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto b0 = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) {
        ok = false;
        break;
      }
      auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

std::size_t codepoint_length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : decode_utf8(s)) {
    append_utf8(out, static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT)));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t c : decode_utf8(s)) {
    if (u_isalnum(static_cast<UChar32>(c))) {
      append_utf8(current,
                  static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<Word> split_words(std::string_view s) {
  std::vector<Word> words;
  std::u32string cps = decode_utf8(s);
  bool next_initial = true;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) {
      if (cps[i] == U'\n') next_initial = true;
      ++i;
    }
    if (i >= cps.size()) break;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_edge_punct(cps[b])) ++b;
    while (e > b && is_edge_punct(cps[e - 1])) --e;
    bool clause = false;
    bool sentence = false;
    for (std::size_t k = e; k < j; ++k) {
      char32_t c = cps[k];
      if (c == U'.' || c == U'!' || c == U'?') sentence = true;
      if (c == U',' || c == U';' || c == U':' || c == U'.' || c == U'!' || c == U'?') clause = true;
    }
    if (b < e) {
      Word w;
      w.raw = encode_utf8(std::u32string_view(cps).substr(b, e - b));
      w.lower = fold_case(w.raw);
      w.sentence_initial = next_initial;
      w.ends_clause = clause;
      w.ends_sentence = sentence;
      words.push_back(std::move(w));
      next_initial = sentence;
    } else if (sentence) {
      next_initial = true;
      if (!words.empty()) {
        words.back().ends_sentence = true;
        words.back().ends_clause = true;
      }
    }
    i = j;
  }
  return words;
}

std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto b = current.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) {
      auto e = current.find_last_not_of(" \t\r\n");
      out.push_back(current.substr(b, e - b + 1));
    }
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\n') {
      flush();
      continue;
    }
    current.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      // keep runs like "?!" or "..." together
      while (i + 1 < s.size() && (s[i + 1] == '.' || s[i + 1] == '!' || s[i + 1] == '?')) {
        current.push_back(s[++i]);
      }
      if (i + 1 >= s.size() || s[i + 1] == ' ' || s[i + 1] == '\n') flush();
    }
  }
  flush();
  return out;
}

bool is_capitalized(std::string_view word) {
  std::u32string cps = decode_utf8(word);
  return !cps.empty() && u_isupper(static_cast<UChar32>(cps[0]));
}

bool has_digit(std::string_view word) {
  return std::any_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int month_index(std::string_view w) {
  if (!w.empty() && w.back() == '.') w.remove_suffix(1);
  for (std::size_t m = 0; m < kMonths.size(); ++m) {
    if (w == kMonths[m]) return static_cast<int>(m) + 1;
    if (w.size() == 3 && kMonths[m].substr(0, 3) == w) return static_cast<int>(m) + 1;
    if (w == "sept" && m == 8) return 9;
  }
  return 0;
}

std::vector<DateMatch> find_dates(const std::vector<Word>& words) {
  std::vector<DateMatch> out;
  const std::size_t n = words.size();
  std::size_t i = 0;
  while (i < n) {
    const std::string& w = words[i].lower;
    if (is_iso_date(w) || is_slash_date(w)) {
      out.push_back({DateKind::kAbsolute, w, i, i});
      ++i;
      continue;
    }
    if (int m = month_index(w); m != 0) {
      std::string month(kMonths[static_cast<std::size_t>(m - 1)]);
      // A bare three-letter abbreviation needs a day or year after it.
      bool abbreviated = w.size() <= 4 && month.size() > 4;
      if (i + 1 < n && !words[i].ends_clause) {
        if (int d = day_of_month(words[i + 1].lower); d != 0) {
          std::string norm = month + " " + std::to_string(d);
          std::size_t last = i + 1;
          if (i + 2 < n && is_year(words[i + 2].lower)) {
            norm += " " + words[i + 2].lower;
            last = i + 2;
          }
          out.push_back({DateKind::kAbsolute, norm, i, last});
          i = last + 1;
          continue;
        }
        if (is_year(words[i + 1].lower)) {
          out.push_back({DateKind::kAbsolute, month + " " + words[i + 1].lower, i, i + 1});
          i += 2;
          continue;
        }
      }
      if (!abbreviated && m != 5 && is_capitalized(words[i].raw)) {
        out.push_back({DateKind::kAbsolute, month, i, i});
        ++i;
        continue;
      }
    }
    if (int d = day_of_month(w); d != 0 && i + 1 < n) {
      std::size_t mi = i + 1;
      if (words[mi].lower == "of" && mi + 1 < n) ++mi;
      if (int m = month_index(words[mi].lower); m != 0) {
        std::string norm = std::string(kMonths[static_cast<std::size_t>(m - 1)]) + " " +
                           std::to_string(d);
        std::size_t last = mi;
        if (mi + 1 < n && is_year(words[mi + 1].lower)) {
          norm += " " + words[mi + 1].lower;
          last = mi + 1;
        }
        out.push_back({DateKind::kAbsolute, norm, i, last});
        i = last + 1;
        continue;
      }
    }
    if (std::find(kWeekdays.begin(), kWeekdays.end(), w) != kWeekdays.end()) {
      out.push_back({DateKind::kWeekday, w, i, i});
      ++i;
      continue;
    }
    if (w == "yesterday" || w == "today" || w == "tomorrow" || w == "tonight") {
      out.push_back({DateKind::kRelative, w, i, i});
      ++i;
      continue;
    }
    if ((w == "last" || w == "next" || w == "this") && i + 1 < n) {
      const std::string& unit = words[i + 1].lower;
      if (unit == "week" || unit == "month" || unit == "year" || unit == "weekend" ||
          unit == "night" || unit == "morning" || unit == "evening") {
        out.push_back({DateKind::kRelative, w + " " + unit, i, i + 1});
        i += 2;
        continue;
      }
    }
    if (i + 2 < n && (all_digits(w) || w == "a" || w == "two" || w == "few") &&
        words[i + 2].lower == "ago") {
      const std::string& unit = words[i + 1].lower;
      if (unit.starts_with("day") || unit.starts_with("week") || unit.starts_with("month") ||
          unit.starts_with("year")) {
        out.push_back({DateKind::kRelative, w + " " + unit + " ago", i, i + 2});
        i += 3;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::vector<std::string> find_numbers(const std::vector<Word>& words,
                                      const std::vector<DateMatch>& dates) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool in_date = std::any_of(dates.begin(), dates.end(), [i](const DateMatch& d) {
      return i >= d.first_word && i <= d.last_word;
    });
    if (!in_date && has_digit(words[i].lower)) out.push_back(words[i].lower);
  }
  return out;
}

bool contains_phrase(const std::vector<Word>& words, std::string_view needle) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start < needle.size()) {
    std::size_t sp = needle.find(' ', start);
    if (sp == std::string_view::npos) sp = needle.size();
    if (sp > start) parts.push_back(needle.substr(start, sp - start));
    start = sp + 1;
  }
  if (parts.empty() || parts.size() > words.size()) return false;
  for (std::size_t i = 0; i + parts.size() <= words.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (words[i + k].lower != parts[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace vmem::text

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/intent.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "vmem/text.hpp"

namespace vmem {
namespace {

using namespace std::chrono;

constexpr Timestamp kDay = 86400;

const std::set<std::string, std::less<>> kNotFocal{
    "what", "when", "where", "who", "why", "how", "which", "did", "does", "do", "is", "was",
    "are", "were", "can", "could", "should", "would", "will", "the", "a", "an", "i", "tell",
    "summarize", "summarise", "give", "show", "list", "find", "has", "have", "had", "any",
    "recap", "overall", "in", "on", "at", "remind", "please", "describe", "whose", "whom"};

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

Timestamp to_ts(sys_days d) { return static_cast<Timestamp>(d.time_since_epoch().count()) * kDay; }

TimeWindow day_span(sys_days first, sys_days last) { return {to_ts(first), to_ts(last) + kDay - 1}; }

TimeWindow month_window(year y, month m) {
  sys_days first = year_month_day{y, m, day{1}};
  sys_days last = year_month_day_last{y, month_day_last{m}};
  return day_span(first, last);
}

TimeWindow year_window(year y) { return day_span(year_month_day{y, January, day{1}}, year_month_day{y, December, day{31}}); }

sys_days week_start(sys_days d) {
  return d - (weekday{d} - Monday);  // Monday-based weeks
}

int small_count(std::string_view w) {
  if (w == "a" || w == "one") return 1;
  if (w == "two") return 2;
  if (w == "few" || w == "three") return 3;
  return to_int(w);
}

std::optional<TimeWindow> resolve(const text::DateMatch& d, sys_days today) {
  const year_month_day ref{today};
  const std::string& s = d.normalized;
  switch (d.kind) {
    case text::DateKind::kAbsolute: {
      if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
        year_month_day ymd{year{to_int(s.substr(0, 4))}, month{static_cast<unsigned>(to_int(s.substr(5, 2)))},
                           day{static_cast<unsigned>(to_int(s.substr(8, 2)))}};
        if (!ymd.ok()) return std::nullopt;
        return day_span(ymd, ymd);
      }
      if (s.find('/') != std::string::npos) {
        std::size_t a = s.find('/');
        std::size_t b = s.find('/', a + 1);
        int m = to_int(s.substr(0, a));
        int dd = to_int(s.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1));
        if (m > 12) std::swap(m, dd);
        int y = static_cast<int>(ref.year());
        if (b != std::string::npos) {
          y = to_int(s.substr(b + 1));
          if (y < 100) y += 2000;
        }
        year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(dd)}};
        if (!ymd.ok()) return std::nullopt;
        return day_span(ymd, ymd);
      }
      // "month", "month day", "month year", "month day year"
      std::vector<std::string> parts;
      for (std::size_t p = 0; p <= s.size();) {
        std::size_t sp = s.find(' ', p);
        if (sp == std::string::npos) sp = s.size();
        parts.push_back(s.substr(p, sp - p));
        p = sp + 1;
      }
      const int mi = text::month_index(parts[0]);
      if (mi == 0) return std::nullopt;
      const month m{static_cast<unsigned>(mi)};
      if (parts.size() == 1) return month_window(ref.year(), m);
      const int second = to_int(parts[1]);
      if (parts.size() == 2 && parts[1].size() == 4) return month_window(year{second}, m);
      year y = parts.size() == 3 ? year{to_int(parts[2])} : ref.year();
      year_month_day ymd{y, m, day{static_cast<unsigned>(second)}};
      if (!ymd.ok()) return std::nullopt;
      return day_span(ymd, ymd);
    }
    case text::DateKind::kWeekday: {
      static constexpr std::string_view kNames[] = {"sunday",   "monday", "tuesday", "wednesday",
                                                    "thursday", "friday", "saturday"};
      unsigned target = 0;
      while (target < 7 && kNames[target] != s) ++target;
      // Most recent such weekday on or before the reference day.
      sys_days dd = today - (weekday{today} - weekday{target});
      return day_span(dd, dd);
    }
    case text::DateKind::kRelative: {
      if (s == "today" || s == "tonight" || s == "this morning" || s == "this evening" ||
          s == "this night") {
        return day_span(today, today);
      }
      if (s == "yesterday" || s == "last night" || s == "last evening" || s == "last morning") {
        return day_span(today - std::chrono::days(1), today - std::chrono::days(1));
      }
      if (s == "tomorrow" || s == "next night" || s == "next morning" || s == "next evening") {
        return day_span(today + std::chrono::days(1), today + std::chrono::days(1));
      }
      const sys_days monday = week_start(today);
      if (s == "this week") return day_span(monday, monday + std::chrono::days(6));
      if (s == "last week") return day_span(monday - std::chrono::days(7), monday - std::chrono::days(1));
      if (s == "next week") return day_span(monday + std::chrono::days(7), monday + std::chrono::days(13));
      if (s == "this weekend") return day_span(monday + std::chrono::days(5), monday + std::chrono::days(6));
      if (s == "last weekend") return day_span(monday - std::chrono::days(2), monday - std::chrono::days(1));
      if (s == "next weekend") return day_span(monday + std::chrono::days(12), monday + std::chrono::days(13));
      const year_month ym{ref.year(), ref.month()};
      if (s == "this month") return month_window(ym.year(), ym.month());
      if (s == "last month") {
        year_month p = ym - months{1};
        return month_window(p.year(), p.month());
      }
      if (s == "next month") {
        year_month p = ym + months{1};
        return month_window(p.year(), p.month());
      }
      if (s == "this year") return year_window(ref.year());
      if (s == "last year") return year_window(ref.year() - years{1});
      if (s == "next year") return year_window(ref.year() + years{1});
      if (s.ends_with(" ago")) {
        const std::size_t sp = s.find(' ');
        const int n = small_count(s.substr(0, sp));
        const std::string unit = s.substr(sp + 1, s.rfind(' ') - sp - 1);
        if (unit.starts_with("day")) {
          sys_days dd = today - std::chrono::days(n);
          return day_span(dd, dd);
        }
        if (unit.starts_with("week")) {
          sys_days dd = today - std::chrono::days(7 * n);
          return day_span(dd - std::chrono::days(3), dd + std::chrono::days(3));
        }
        if (unit.starts_with("month")) {
          year_month p = ym - months{n};
          return month_window(p.year(), p.month());
        }
        if (unit.starts_with("year")) return year_window(ref.year() - years{n});
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(QuestionType t) {
  switch (t) {
    case QuestionType::kDetail: return "detail";
    case QuestionType::kSynthesis: return "synthesis";
    case QuestionType::kGeneral: return "general";
  }
  return "general";
}

std::vector<TimeWindow> resolve_time_windows(std::string_view query, Timestamp reference_ts) {
  const sys_days today{floor<std::chrono::days>(sys_seconds{seconds{reference_ts}}).time_since_epoch()};
  std::vector<TimeWindow> out;
  for (const auto& d : text::find_dates(query)) {
    if (auto w = resolve(d, today)) out.push_back(*w);
  }
  return out;
}

QueryIntent detect_intent(std::string_view query, Timestamp reference_ts, const IntentConfig& config) {
  QueryIntent intent;
  const auto words = text::split_words(query);
  auto any = [&](const std::vector<std::string>& phrases) {
    return std::any_of(phrases.begin(), phrases.end(),
                       [&](const std::string& p) { return text::contains_phrase(words, p); });
  };

  const auto windows = resolve_time_windows(query, reference_ts);
  if (!windows.empty()) {
    TimeWindow hull = windows.front();
    for (const auto& w : windows) {
      hull.from = std::min(hull.from, w.from);
      hull.to = std::max(hull.to, w.to);
    }
    intent.time_window = hull;
  }
  intent.temporal = intent.time_window.has_value() || !text::find_dates(words).empty() ||
                    any(config.temporal_phrases);
  intent.personality = any(config.personality_phrases);

  if (any(config.synthesis_phrases)) {
    intent.question_type = QuestionType::kSynthesis;
  } else if (any(config.detail_phrases)) {
    intent.question_type = QuestionType::kDetail;
  }

  const auto dates = text::find_dates(words);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool in_date = std::any_of(dates.begin(), dates.end(), [i](const text::DateMatch& d) {
      return i >= d.first_word && i <= d.last_word;
    });
    if (in_date || !text::is_capitalized(words[i].raw) || text::has_digit(words[i].raw)) continue;
    std::string name = words[i].raw;
    for (std::string_view suffix : {"'s", "\xE2\x80\x99s"}) {
      if (name.size() > suffix.size() && name.ends_with(suffix)) name.resize(name.size() - suffix.size());
    }
    if (kNotFocal.contains(text::fold_case(name))) continue;
    intent.focal_entity = name;
    break;
  }
  return intent;
}

}  // namespace vmem

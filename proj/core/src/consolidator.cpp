// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/consolidator.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <unordered_map>

#include "vmem/text.hpp"

namespace vmem {
namespace {

using text::Word;

const std::set<std::string, std::less<>> kNotEntities{
    "the",  "a",     "an",    "this",   "that",     "these", "those",     "it",      "he",
    "she",  "they",  "we",    "you",    "there",    "here",  "what",      "who",     "where",
    "when", "why",   "how",   "which",  "and",      "but",   "or",        "so",      "if",
    "my",   "your",  "his",   "her",    "our",      "their", "its",       "also",    "then",
    "now",  "today", "yesterday", "tomorrow", "yes", "no",   "ok",        "okay",    "well",
    "actually", "just", "maybe", "i",    "oh",      "hey",   "hi",        "hello",   "thanks",
    "everyone", "someone", "nobody", "everything", "nothing", "lol", "sure", "great", "did",
    "does", "do",    "is",    "was",    "are",      "were",  "will",      "can",     "could",
    "would", "should", "let's", "lets",  "after",   "before", "because",  "since",   "once"};

const std::set<std::string, std::less<>> kSubjectSkips{
    "just", "recently", "finally", "also", "now", "already", "actually", "then", "has",
    "have", "had",  "i've",   "is",      "was",  "are", "were",    "still", "officially"};

const std::set<std::string, std::less<>> kValueStops{
    "and",  "but",   "because", "since", "when",  "while", "so",     "last",     "next",
    "this", "yesterday", "today", "tomorrow", "with", "for", "on",   "in",       "at",
    "from", "after", "before",  "now",   "again", "too",   "until",  "by",       "recently",
    "soon", "though", "although", "which", "who",  "where", "if",    "or",       "than"};

const std::set<std::string, std::less<>> kCopulaSkips{
    "living", "moving", "working", "going", "not", "being", "still", "in", "at", "from",
    "also", "so", "very", "really", "just", "about", "like", "gonna", "getting", "the"};

struct VerbPattern {
  std::string_view phrase;
  std::string_view predicate;
};

constexpr std::array<VerbPattern, 13> kVerbPatterns{{
    {"lives in", "lives_in"},
    {"live in", "lives_in"},
    {"lived in", "lives_in"},
    {"living in", "lives_in"},
    {"moved to", "lives_in"},
    {"move to", "lives_in"},
    {"moving to", "lives_in"},
    {"relocated to", "lives_in"},
    {"works at", "works_at"},
    {"work at", "works_at"},
    {"working at", "works_at"},
    {"works for", "works_at"},
    {"work for", "works_at"},
}};

std::string normalize_apostrophes(std::string s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80 && static_cast<unsigned char>(s[i + 2]) == 0x99) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

bool entity_word(const Word& w) {
  return text::is_capitalized(w.raw) && !text::has_digit(w.raw) && !kNotEntities.contains(w.lower);
}

bool matches_at(const std::vector<Word>& words, std::size_t i, std::string_view phrase) {
  std::size_t k = i;
  std::size_t start = 0;
  while (start < phrase.size()) {
    std::size_t sp = phrase.find(' ', start);
    if (sp == std::string_view::npos) sp = phrase.size();
    if (k >= words.size() || words[k].lower != phrase.substr(start, sp - start)) return false;
    // the phrase must not straddle a clause break
    if (sp < phrase.size() && words[k].ends_clause) return false;
    ++k;
    start = sp + 1;
  }
  return true;
}

std::size_t phrase_length(std::string_view phrase) {
  return static_cast<std::size_t>(std::count(phrase.begin(), phrase.end(), ' ')) + 1;
}

// Capitalized run ending at words[j]; empty if words[j] is not an entity word.
std::string entity_run_ending_at(const std::vector<Word>& words, std::size_t j) {
  if (!entity_word(words[j])) return {};
  std::size_t b = j;
  while (b > 0 && entity_word(words[b - 1]) && !words[b - 1].ends_clause) --b;
  std::string out;
  for (std::size_t k = b; k <= j; ++k) {
    if (!out.empty()) out.push_back(' ');
    out += words[k].raw;
  }
  return out;
}

std::string resolve_subject(const std::vector<Word>& words, std::size_t verb, std::string_view sender) {
  if (verb == 0) return {};
  std::size_t j = verb - 1;
  while (kSubjectSkips.contains(words[j].lower) && !words[j].ends_clause) {
    if (j == 0) return {};
    --j;
  }
  if (words[j].ends_clause) return {};
  if (words[j].lower == "i" || words[j].lower == "i've" || words[j].lower == "i'm") {
    return std::string(sender);
  }
  return entity_run_ending_at(words, j);
}

std::string take_value(const std::vector<Word>& words, std::size_t start) {
  std::size_t k = start;
  while (k < words.size() && (words[k].lower == "the" || words[k].lower == "a" ||
                              words[k].lower == "an")) {
    if (words[k].ends_clause) return {};
    ++k;
  }
  std::vector<const Word*> picked;
  for (; k < words.size() && picked.size() < 4; ++k) {
    if (kValueStops.contains(words[k].lower)) break;
    picked.push_back(&words[k]);
    if (words[k].ends_clause) break;
  }
  if (picked.empty()) return {};
  if (text::is_capitalized(picked.front()->raw)) {
    std::size_t n = 1;
    while (n < picked.size() && text::is_capitalized(picked[n]->raw)) ++n;
    picked.resize(n);
  }
  std::string out;
  for (const Word* w : picked) {
    if (!out.empty()) out.push_back(' ');
    out += w->raw;
  }
  return out;
}

std::string strip_possessive(const std::string& raw) {
  if (raw.size() > 2 && raw.ends_with("'s")) return raw.substr(0, raw.size() - 2);
  return {};
}

std::string snake_case(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back('_');
    out += p;
  }
  return out;
}

bool later(const TimelineAssertion& a, const TimelineAssertion& b) {
  if (b.ts != a.ts) return b.ts > a.ts;
  return b.event_id > a.event_id;
}

}  // namespace

std::vector<Assertion> extract_assertions(std::string_view input, std::string_view sender) {
  std::vector<Word> words = text::split_words(input);
  for (auto& w : words) {
    w.raw = normalize_apostrophes(std::move(w.raw));
    w.lower = normalize_apostrophes(std::move(w.lower));
  }
  std::vector<Assertion> out;
  auto push = [&out](Assertion a) {
    if (a.entity.empty() || a.value.empty()) return;
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  };

  std::set<std::size_t> possessive_copulas;
  for (std::size_t i = 0; i < words.size(); ++i) {
    // Location and employment verbs.
    for (const VerbPattern& p : kVerbPatterns) {
      if (!matches_at(words, i, p.phrase)) continue;
      std::string subject = resolve_subject(words, i, sender);
      if (subject.empty()) continue;
      std::size_t after = i + phrase_length(p.phrase);
      if (words[after - 1].ends_clause) continue;
      push({subject, std::string(p.predicate), take_value(words, after)});
    }

    // Possession: "<Entity>'s <attr> is <value>" / "my <attr> is <value>".
    std::string owner;
    if (words[i].lower == "my") {
      owner = std::string(sender);
    } else if (std::string base = strip_possessive(words[i].raw);
               !base.empty() && text::is_capitalized(base) &&
               !kNotEntities.contains(text::fold_case(base))) {
      owner = base;
    }
    if (!owner.empty() && !words[i].ends_clause) {
      std::vector<std::string> attr;
      std::size_t k = i + 1;
      while (k < words.size() && attr.size() < 3 && words[k].lower != "is" &&
             words[k].lower != "was") {
        attr.push_back(words[k].lower);
        if (words[k].ends_clause) break;
        ++k;
      }
      if (!attr.empty() && k < words.size() && (words[k].lower == "is" || words[k].lower == "was") &&
          !words[k - 1].ends_clause) {
        possessive_copulas.insert(k);
        push({owner, snake_case(attr), take_value(words, k + 1)});
      }
    }
  }

  // Copula: "<Entity> is|was <value>".
  for (std::size_t i = 1; i < words.size(); ++i) {
    if ((words[i].lower != "is" && words[i].lower != "was") || possessive_copulas.contains(i)) continue;
    if (words[i - 1].ends_clause || words[i].ends_clause || i + 1 >= words.size()) continue;
    if (kCopulaSkips.contains(words[i + 1].lower)) continue;
    std::string entity = entity_run_ending_at(words, i - 1);
    if (entity.empty()) continue;
    push({entity, "is", take_value(words, i + 1)});
  }
  return out;
}

bool detect_contradiction(const TimelineAssertion& a, const TimelineAssertion& b) {
  return text::fold_case(a.entity) == text::fold_case(b.entity) && a.predicate == b.predicate &&
         text::fold_case(a.value) != text::fold_case(b.value) && later(a, b);
}

std::string ExtractiveSummarizer::summarize(const std::vector<Event>& cluster) const {
  struct Sentence {
    std::size_t position;
    double score;
    std::string line;
  };
  std::vector<Sentence> sentences;
  for (const Event& e : cluster) {
    for (auto& s : text::split_sentences(e.text)) {
      double score = compute_message_salience(s, config_.salience).value;
      sentences.push_back({sentences.size(), score, e.sender + ": " + s});
    }
  }
  std::stable_sort(sentences.begin(), sentences.end(), [](const Sentence& a, const Sentence& b) {
    return a.score != b.score ? a.score > b.score : a.position < b.position;
  });
  if (sentences.size() > config_.summary_sentences) sentences.resize(config_.summary_sentences);
  std::sort(sentences.begin(), sentences.end(),
            [](const Sentence& a, const Sentence& b) { return a.position < b.position; });
  std::string out;
  for (const Sentence& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s.line;
  }
  return out;
}

ConsolidationReport consolidate(Store& store, const ConsolidatorConfig& config,
                                const Summarizer* summarizer) {
  ExtractiveSummarizer extractive(config);
  if (!summarizer) summarizer = &extractive;

  ConsolidationReport report;
  auto tx = store.transaction();
  const std::vector<Episode> episodes = store.rebuild_episodes();

  std::vector<Event> messages = store.events(Modality::kMessage);
  std::stable_sort(messages.begin(), messages.end(), [](const Event& a, const Event& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  const std::size_t take = std::min(config.window_events, messages.size());
  std::vector<Event> window(messages.end() - static_cast<std::ptrdiff_t>(take), messages.end());
  std::unordered_map<EventId, const Event*> in_window;
  for (const Event& e : window) in_window.emplace(e.id, &e);

  // Summaries, one per windowed episode slice.
  const std::size_t first_episode =
      episodes.size() > config.window_episodes ? episodes.size() - config.window_episodes : 0;
  std::set<EventId> clustered;
  for (std::size_t i = first_episode; i < episodes.size(); ++i) {
    std::vector<Event> cluster;
    for (EventId id : episodes[i].event_ids) {
      if (auto it = in_window.find(id); it != in_window.end()) cluster.push_back(*it->second);
    }
    if (cluster.empty()) continue;
    for (const Event& e : cluster) clustered.insert(e.id);
    std::string key = std::to_string(cluster.front().id) + "-" + std::to_string(cluster.back().id);
    if (store.has_summary(key)) continue;
    std::string summary = summarizer->summarize(cluster);
    if (summary.empty()) continue;

    EventInput input;
    input.text = summary;
    input.sender = config.summary_sender;
    input.timestamp = cluster.back().timestamp;
    input.category = Category::kStatement;
    input.modality = Modality::kSummary;
    Event summary_event = store.append_event(input);

    SummaryRecord record;
    record.cluster_key = key;
    record.event_id = summary_event.id;
    record.text = summary;
    for (const Event& e : cluster) record.source_event_ids.push_back(e.id);
    record.created_ts = cluster.back().timestamp;
    record.id = store.insert_summary(record);
    report.summaries.push_back(std::move(record));
  }

  // Timeline assertions from clustered events not yet consolidated.
  std::set<std::pair<std::string, std::string>> touched;
  std::set<std::int64_t> added_ids;
  for (const Event& e : window) {
    if (!clustered.contains(e.id) || store.is_consolidated(e.id)) continue;
    for (const Assertion& a : extract_assertions(e.text, e.sender)) {
      TimelineAssertion ta;
      ta.entity = a.entity;
      ta.predicate = a.predicate;
      ta.value = a.value;
      ta.event_id = e.id;
      ta.ts = e.timestamp;
      if (auto id = store.insert_assertion(ta)) {
        added_ids.insert(*id);
        touched.emplace(text::fold_case(a.entity), a.predicate);
      }
    }
    store.mark_consolidated(e.id);
  }

  std::map<std::pair<std::string, std::string>, std::vector<TimelineAssertion>> chains;
  for (TimelineAssertion& a : store.timeline()) {
    auto key = std::make_pair(text::fold_case(a.entity), a.predicate);
    if (touched.contains(key)) chains[key].push_back(std::move(a));
  }
  for (auto& [key, chain] : chains) {
    std::stable_sort(chain.begin(), chain.end(), [](const TimelineAssertion& a, const TimelineAssertion& b) {
      if (a.ts != b.ts) return a.ts < b.ts;
      if (a.event_id != b.event_id) return a.event_id < b.event_id;
      return a.id < b.id;
    });
    for (std::size_t k = 0; k < chain.size(); ++k) {
      std::optional<std::int64_t> next;
      if (k + 1 < chain.size()) next = chain[k + 1].id;
      if (chain[k].superseded_by != next) {
        store.set_superseded_by(chain[k].id, next);
        chain[k].superseded_by = next;
        ++report.links_updated;
      }
      if (k + 1 < chain.size() && detect_contradiction(chain[k], chain[k + 1])) {
        ContradictionRecord c;
        c.entity = chain[k + 1].entity;
        c.predicate = chain[k + 1].predicate;
        c.event_id_a = chain[k].event_id;
        c.event_id_b = chain[k + 1].event_id;
        c.detected_ts = chain[k + 1].ts;
        if (store.insert_contradiction(c)) report.contradictions.push_back(c);
      }
      if (added_ids.contains(chain[k].id)) report.timeline.push_back(chain[k]);
    }
  }
  tx.commit();
  return report;
}

}  // namespace vmem

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/bench.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <set>
#include <string_view>

namespace vmem::bench {
namespace {

constexpr Timestamp kEpoch = 1704067200;  // 2024-01-01T00:00:00Z

constexpr std::array<std::string_view, 8> kSpeakers{"Alice", "Bob",   "Carol", "Dave",
                                                    "Erin",  "Frank", "Grace", "Heidi"};
constexpr std::array<std::string_view, 20> kSyllables{"bra", "vel", "dor", "kin", "mas", "tor", "lun",
                                                      "zef", "qua", "rim", "sol", "vex", "nor", "pel",
                                                      "gar", "thu", "wix", "yol", "fen", "dru"};
constexpr std::array<std::string_view, 12> kMonths{"January", "February", "March",     "April",
                                                   "May",     "June",     "July",      "August",
                                                   "September", "October", "November", "December"};
constexpr std::array<std::string_view, 7> kWeekdays{"Monday", "Tuesday",  "Wednesday", "Thursday",
                                                    "Friday", "Saturday", "Sunday"};
constexpr std::array<std::string_view, 8> kCities{"Lisbon", "Porto",  "Madrid", "Berlin",
                                                  "Vienna", "Prague", "Dublin", "Oslo"};
constexpr std::array<std::string_view, 6> kBreeds{"beagle", "poodle", "corgi", "terrier", "collie", "husky"};
constexpr std::array<std::string_view, 6> kAuthors{"Maria Okafor", "John Devereux", "Lena Brandt",
                                                   "Tomas Ruiz",   "Priya Nair",    "Sam Whitfield"};
constexpr std::array<std::string_view, 6> kVenues{"Blue Room", "Old Mill", "Harbor Hall",
                                                  "Red Lantern", "Corner Stage", "Union Club"};
constexpr std::array<std::string_view, 8> kFoods{"ramen", "tacos",  "pizza", "sushi",
                                                 "curry", "salad", "dumplings", "pasta"};
constexpr std::array<std::string_view, 5> kProjects{"marketing", "website", "budget", "onboarding", "migration"};
constexpr std::array<std::string_view, 5> kRelatives{"sister", "brother", "mom", "dad", "cousin"};
constexpr std::array<std::string_view, 4> kSports{"football", "tennis", "basketball", "hockey"};
constexpr std::array<std::string_view, 5> kAdjectives{"rainy", "sunny", "cold", "windy", "lovely"};
constexpr std::array<std::string_view, 9> kNoise{"ok", "lol", "thanks!", "haha", "sure", "yep",
                                                 "nice", "cool cool", "ok thanks"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  template <typename T, std::size_t N>
  std::string pick(const std::array<T, N>& a) {
    return std::string(a[below(N)]);
  }
  bool chance(std::size_t percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;  // raw output is fully specified by the standard
};

std::string unique_name(Rng& rng, std::set<std::string>& used) {
  for (;;) {
    std::string name;
    for (int i = 0; i < 3; ++i) name += rng.pick(kSyllables);
    name[0] = static_cast<char>(name[0] - 'a' + 'A');
    if (used.insert(name).second) return name;
  }
}

std::string date_phrase(Rng& rng) { return rng.pick(kMonths) + " " + std::to_string(1 + rng.below(28)); }

struct Planted {
  std::string fact;
  std::string query;
  std::string update;  // empty when none
};

Planted plant(Rng& rng, const std::string& u, const std::string& speaker) {
  switch (rng.below(8)) {
    case 0:
      return {"The " + u + " project deadline moved to " + date_phrase(rng) + ".",
              "When is the " + u + " project deadline?",
              "Actually the " + u + " deadline changed to " + date_phrase(rng) + "."};
    case 1:
      return {"My cousin adopted a puppy named " + u + ", a " + rng.pick(kBreeds) + ".",
              "What breed is the puppy " + u + "?", ""};
    case 2: {
      std::string city = rng.pick(kCities);
      return {"We booked the " + u + " hotel in " + city + " for the trip.",
              "Which city is the " + u + " hotel in?",
              "Update: the " + u + " hotel booking is now in " + rng.pick(kCities) + " instead."};
    }
    case 3:
      return {"The wifi password at the " + u + " cafe is " + std::to_string(1000 + rng.below(9000)) + ".",
              "What is the wifi password at the " + u + " cafe?", ""};
    case 4:
      return {"I am reading " + u + ", a novel by " + rng.pick(kAuthors) + ".",
              "Who wrote the novel " + u + "?", ""};
    case 5:
      return {speaker + "'s band " + u + " plays at the " + rng.pick(kVenues) + " on " +
                  rng.pick(kWeekdays) + ".",
              "When does the band " + u + " play?", ""};
    case 6:
      return {"The " + u + " restaurant serves the best " + rng.pick(kFoods) + " in town.",
              "What food does the " + u + " restaurant serve?", ""};
    default:
      return {"Our new manager " + u + " sits on floor " + std::to_string(2 + rng.below(30)) + ".",
              "Which floor does " + u + " sit on?",
              "Actually " + u + " moved to floor " + std::to_string(2 + rng.below(30)) + " now."};
  }
}

std::string filler(Rng& rng) {
  switch (rng.below(12)) {
    case 0: return "The " + rng.pick(kProjects) + " project is going well, deadline is still " + rng.pick(kWeekdays) + ".";
    case 1: return "I had " + rng.pick(kFoods) + " for lunch today.";
    case 2: return "The weather in " + rng.pick(kCities) + " is " + rng.pick(kAdjectives) + " this week.";
    case 3: return "Did anyone watch the " + rng.pick(kSports) + " game last night?";
    case 4: return "I need to book a hotel for the conference in " + rng.pick(kCities) + ".";
    case 5: return "The cafe near the office has a new menu with " + rng.pick(kFoods) + ".";
    case 6: return "My " + rng.pick(kRelatives) + " is visiting on " + rng.pick(kWeekdays) + ".";
    case 7: return "Can someone send me the slides for the " + rng.pick(kProjects) + " review?";
    case 8: return "Reading a great novel at the moment, can't put it down.";
    case 9: return "Our band practice got moved to " + rng.pick(kWeekdays) + ".";
    case 10: return "The wifi in the office is slow again.";
    default: return "I think we should order " + rng.pick(kFoods) + " for the team dinner.";
  }
}

struct Slot {
  std::string text;
  int query = -1;  // needle or update for this query
};

}  // namespace

SyntheticCorpus generate_corpus(std::uint64_t seed, std::size_t n_events, std::size_t n_queries) {
  if (n_events == 0) throw Error(ErrorCode::kInvalidArgument, "n_events must be positive");
  Rng rng(seed);
  SyntheticCorpus corpus;
  corpus.seed = seed;

  std::set<std::string> used;
  std::vector<Planted> planted;
  std::vector<std::string> owners;
  for (std::size_t q = 0; q < n_queries; ++q) {
    std::string owner = rng.pick(kSpeakers);
    planted.push_back(plant(rng, unique_name(rng, used), owner));
    owners.push_back(std::move(owner));
  }
  std::size_t planted_events = 0;
  for (const Planted& p : planted) planted_events += p.update.empty() ? 1 : 2;

  std::vector<Slot> slots;
  const std::size_t fillers = n_events > planted_events ? n_events - planted_events : 0;
  for (std::size_t i = 0; i < fillers; ++i) {
    slots.push_back({rng.chance(15) ? rng.pick(kNoise) : filler(rng), -1});
  }
  for (std::size_t q = 0; q < planted.size(); ++q) {
    const std::size_t at = rng.below(slots.size() + 1);
    slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(at), {planted[q].fact, static_cast<int>(q)});
    if (!planted[q].update.empty()) {
      const std::size_t after = at + 1 + rng.below(slots.size() - at);
      slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(after),
                   {planted[q].update, static_cast<int>(q)});
    }
  }

  corpus.queries.resize(planted.size());
  for (std::size_t q = 0; q < planted.size(); ++q) corpus.queries[q].text = planted[q].query;

  Timestamp ts = kEpoch;
  std::size_t left_in_session = 10 + rng.below(16);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (left_in_session == 0) {
      ts += 7 * 3600 + static_cast<Timestamp>(rng.below(41 * 3600));
      left_in_session = 10 + rng.below(16);
    } else if (i > 0) {
      ts += 30 + static_cast<Timestamp>(rng.below(870));
    }
    --left_in_session;

    EventInput e;
    e.text = slots[i].text;
    e.sender = slots[i].query >= 0 && rng.chance(50) ? owners[static_cast<std::size_t>(slots[i].query)]
                                                     : rng.pick(kSpeakers);
    if (rng.chance(30)) {
      std::string to = rng.pick(kSpeakers);
      if (to != e.sender) e.recipient = to;
    }
    e.timestamp = ts;
    corpus.events.push_back(std::move(e));
    if (slots[i].query >= 0) {
      corpus.queries[static_cast<std::size_t>(slots[i].query)].relevant.push_back(static_cast<EventId>(i) + 1);
    }
  }
  return corpus;
}

std::vector<EventId> ingest_corpus(Engine& engine, const SyntheticCorpus& corpus) {
  std::vector<EventId> ids;
  // One transaction is only safe without the gate: gate reads see committed
  // state.
  std::optional<Store::Transaction> tx;
  if (!engine.config().gate.tau) tx.emplace(engine.store().transaction());
  for (const EventInput& e : corpus.events) {
    IngestResult r = engine.ingest(e);
    if (r.event) ids.push_back(r.event->id);
  }
  if (tx) tx->commit();
  return ids;
}

RetrievalMetrics score_rankings(const std::vector<std::vector<EventId>>& rankings,
                                const std::vector<std::vector<EventId>>& relevant, std::size_t k) {
  RetrievalMetrics m;
  m.queries = relevant.size();
  if (relevant.empty()) return m;
  double recall = 0.0;
  double rr = 0.0;
  for (std::size_t q = 0; q < relevant.size(); ++q) {
    const std::set<EventId> rel(relevant[q].begin(), relevant[q].end());
    const std::vector<EventId>& ranked = q < rankings.size() ? rankings[q] : std::vector<EventId>{};
    std::size_t found = 0;
    bool first = true;
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
      if (!rel.contains(ranked[i])) continue;
      ++found;
      if (first) {
        rr += 1.0 / static_cast<double>(i + 1);
        first = false;
      }
    }
    if (!rel.empty()) recall += static_cast<double>(found) / static_cast<double>(rel.size());
  }
  m.recall_at_k = recall / static_cast<double>(relevant.size());
  m.mrr = rr / static_cast<double>(relevant.size());
  return m;
}

RetrievalMetrics eval_retrieval(const Engine& engine, const SyntheticCorpus& corpus, std::size_t k) {
  std::vector<std::vector<EventId>> rankings;
  std::vector<std::vector<EventId>> relevant;
  for (const LabeledQuery& q : corpus.queries) {
    std::vector<EventId> ids;
    for (const QueryResult& r : engine.query(q.text, k)) ids.push_back(r.event.id);
    rankings.push_back(std::move(ids));
    relevant.push_back(q.relevant);
  }
  return score_rankings(rankings, relevant, k);
}

std::optional<double> auc_rank_sum(const std::vector<double>& scores, const std::vector<bool>& labels) {
  const std::size_t n = scores.size();
  std::size_t pos = 0;
  for (bool l : labels) pos += l ? 1 : 0;
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0 || labels.size() != n) return std::nullopt;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[order[t]]) rank_sum += midrank;
    }
    i = j + 1;
  }
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

std::optional<double> auc_all_pairs(const std::vector<double>& scores, const std::vector<bool>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  if (pairs == 0) return std::nullopt;
  return wins / static_cast<double>(pairs);
}

std::vector<LabeledMessage> make_labeled_stream(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::set<std::string> used;
  std::vector<LabeledMessage> out;
  std::vector<std::string> kept;
  Timestamp ts = kEpoch;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledMessage m;
    m.sender = rng.pick(kSpeakers);
    m.timestamp = ts;
    ts += 60 + static_cast<Timestamp>(rng.below(600));
    const std::size_t roll = rng.below(100);
    if (kept.empty() || roll < 50) {
      const std::string u = unique_name(rng, used);
      m.text = plant(rng, u, m.sender).fact + " " + u + " confirmed " +
               std::to_string(10 + rng.below(990)) + " guests on " + date_phrase(rng) + ".";
      m.keep = true;
      kept.push_back(m.text);
    } else if (roll < 75) {
      m.text = rng.pick(kNoise);
    } else {
      m.text = kept[rng.below(kept.size())];
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MessageSignals> compute_stream_signals(const std::vector<LabeledMessage>& stream,
                                                   const GateConfig& gate,
                                                   const SalienceConfig& salience) {
  Store store = Store::open(":memory:");
  std::vector<MessageSignals> out;
  out.reserve(stream.size());
  for (const LabeledMessage& m : stream) {
    MessageSignals s;
    const SalienceScore sal = hybrid_salience(m.text, salience);
    s.signals.salience = sal.value;
    s.category = sal.category;
    s.signals.novelty = novelty(store, m.text, gate);
    s.signals.prediction_error = prediction_error(store, m.text, gate, salience);
    out.push_back(s);
    EventInput e;
    e.text = m.text;
    e.sender = m.sender;
    e.timestamp = m.timestamp;
    store.append_event(e);
  }
  return out;
}

std::vector<GatePoint> default_gate_grid() {
  constexpr double kWeights[] = {0.0, 0.25, 0.5, 1.0};
  std::vector<GatePoint> grid;
  for (double tau : {0.25, 0.30}) {
    for (double ln : kWeights) {
      for (double ls : kWeights) {
        for (double lp : kWeights) {
          if (ln + ls + lp > 0) grid.push_back({ln, ls, lp, tau});
        }
      }
    }
  }
  return grid;
}

std::vector<SweepResult> sweep_gate(const std::vector<LabeledMessage>& stream,
                                    const std::vector<GatePoint>& grid, const GateConfig& base,
                                    const SalienceConfig& salience) {
  const std::vector<MessageSignals> signals = compute_stream_signals(stream, base, salience);
  std::vector<bool> labels;
  for (const LabeledMessage& m : stream) labels.push_back(m.keep);

  std::vector<SweepResult> out;
  for (const GatePoint& p : grid) {
    GateConfig c = base;
    c.lambda_n = p.lambda_n;
    c.lambda_s = p.lambda_s;
    c.lambda_pi = p.lambda_pi;
    c.tau = p.tau;
    SweepResult r;
    r.point = p;
    std::vector<double> margins;
    for (const MessageSignals& s : signals) {
      const double score = gate_score(s.signals, c);
      const bool floor_ok = s.signals.salience >= c.salience_floor;
      const double margin = floor_ok ? score - (p.tau + category_offset(s.category, c)) : score - 10.0;
      margins.push_back(margin);
      if (gate_admits(s.signals, s.category, c)) ++r.admitted;
    }
    r.auc = auc_rank_sum(margins, labels);
    out.push_back(r);
  }
  return out;
}

std::vector<GridCell> run_grid(const SyntheticCorpus& corpus, const std::vector<std::string>& embedders,
                               const std::vector<std::string>& rerankers, std::size_t k,
                               const EngineConfig& base) {
  std::vector<GridCell> cells;
  for (const std::string& e : embedders) {
    for (const std::string& r : rerankers) {
      EngineConfig config = base;
      config.embedder = e;
      config.reranker = r;
      config.gate.tau.reset();
      Engine engine = Engine::open(":memory:", config);
      ingest_corpus(engine, corpus);
      cells.push_back({e, r, eval_retrieval(engine, corpus, k)});
    }
  }
  return cells;
}

std::string grid_csv(const std::vector<GridCell>& cells) {
  std::string out = "embedder,reranker,recall_at_k,mrr\n";
  char buf[64];
  for (const GridCell& c : cells) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", c.metrics.recall_at_k, c.metrics.mrr);
    out += c.embedder + "," + c.reranker + "," + buf + "\n";
  }
  return out;
}

}  // namespace vmem::bench

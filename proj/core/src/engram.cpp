// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "vmem/engram.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vmem/text.hpp"

namespace vmem {
namespace {

const std::set<std::string, std::less<>> kAdverbs{
    "really", "absolutely", "just",  "also", "totally", "truly", "do",   "still",
    "kinda",  "genuinely",  "so",    "always", "actually", "honestly", "definitely", "usually"};

const std::set<std::string, std::less<>> kObjectSkips{"the", "a", "an", "my", "to", "some"};

const std::set<std::string, std::less<>> kPronouns{"it",   "that", "this", "you", "them",
                                                   "him",  "her",  "those", "these", "us", "me"};

const std::set<std::string, std::less<>> kObjectStops{
    "and", "but", "because", "since", "when", "while", "so", "with", "for", "on", "in", "at",
    "more", "than", "too", "a", "lot", "very", "much", "if", "or", "though", "now", "anymore"};

std::string normalize_apostrophes(std::string s) {
  std::string out;
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

// Returns (polarity, words consumed) for a preference verb at words[j].
std::pair<std::string, std::size_t> verb_at(const std::vector<text::Word>& w, std::size_t j) {
  auto at = [&](std::size_t k) -> std::string_view {
    return k < w.size() ? std::string_view(w[k].lower) : std::string_view();
  };
  std::string_view v = at(j);
  if (v == "like" || v == "love" || v == "enjoy" || v == "adore") return {"likes", 1};
  if (v == "prefer") return {"prefers", 1};
  if (v == "hate" || v == "dislike" || v == "detest") return {"dislikes", 1};
  if ((v == "can't" || v == "cannot") && at(j + 1) == "stand") return {"dislikes", 2};
  if (v == "don't" && (at(j + 1) == "like" || at(j + 1) == "enjoy")) return {"dislikes", 2};
  if (v == "do" && at(j + 1) == "not" && at(j + 2) == "like") return {"dislikes", 3};
  return {"", 0};
}

}  // namespace

std::vector<Preference> extract_preferences(std::string_view input) {
  auto words = text::split_words(input);
  for (auto& w : words) w.lower = normalize_apostrophes(std::move(w.lower));

  std::vector<Preference> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].lower != "i" || words[i].ends_clause) continue;
    std::size_t j = i + 1;
    auto [polarity, used] = verb_at(words, j);
    while (used == 0 && j < words.size() && kAdverbs.contains(words[j].lower) &&
           !words[j].ends_clause) {
      ++j;
      std::tie(polarity, used) = verb_at(words, j);
    }
    if (used == 0 || words[j + used - 1].ends_clause) continue;

    std::size_t k = j + used;
    while (k < words.size() && kObjectSkips.contains(words[k].lower) && !words[k].ends_clause) ++k;
    if (k >= words.size() || kPronouns.contains(words[k].lower)) continue;

    std::vector<std::string> object;
    for (; k < words.size() && object.size() < 3; ++k) {
      if (kObjectStops.contains(words[k].lower)) break;
      object.push_back(words[k].lower);
      if (words[k].ends_clause) break;
    }
    if (object.empty()) continue;

    Preference p;
    p.key = object.back();
    p.value = polarity;
    if (object.size() > 1) {
      for (const auto& o : object) p.value += " " + o;
    }
    out.push_back(std::move(p));
  }
  return out;
}

DenseVector mean_pool(const std::vector<DenseVector>& vectors) {
  if (vectors.empty()) return DenseVector::canonical();
  DenseVector sum;
  for (const DenseVector& v : vectors) {
    DenseVector u = v.normalized();
    for (std::size_t i = 0; i < kVectorDim; ++i) sum[i] += u[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (std::size_t i = 0; i < kVectorDim; ++i) sum[i] /= n;
  return sum.normalized();
}

std::string profile_text(const EntityProfile& profile) {
  std::string out;
  for (const auto& [key, value] : profile.attributes) {
    if (!out.empty()) out.push_back(' ');
    out += profile.entity + " " + value;
    if (value.find(' ') == std::string::npos) out += " " + key;
    out.push_back('.');
  }
  return out;
}

std::size_t update_engrams(Store& store) {
  std::vector<Event> messages = store.events(Modality::kMessage);
  std::stable_sort(messages.begin(), messages.end(), [](const Event& a, const Event& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  std::map<std::string, std::vector<const Event*>> by_sender;
  for (const Event& e : messages) by_sender[e.sender].push_back(&e);

  auto tx = store.transaction();
  for (const auto& [entity, events] : by_sender) {
    std::vector<DenseVector> vectors;
    EntityProfile profile;
    profile.entity = entity;
    for (const Event* e : events) {
      vectors.push_back(ngram_vector(e->text, kStyleNgrams));
      for (Preference& p : extract_preferences(e->text)) profile.attributes[p.key] = std::move(p.value);
      profile.updated_ts = std::max(profile.updated_ts, e->timestamp);
    }
    store.upsert_style_vector({entity, mean_pool(vectors)});

    const std::optional<EntityProfile> previous = store.profile(entity);
    const std::string body = profile_text(profile);
    if (previous && previous->profile_event_id) {
      const std::optional<Event> prior = store.find_event(*previous->profile_event_id);
      if (prior && prior->text == body) profile.profile_event_id = previous->profile_event_id;
    }
    if (!profile.profile_event_id && !body.empty()) {
      EventInput input;
      input.text = body;
      input.sender = entity;
      input.timestamp = profile.updated_ts;
      input.category = Category::kStatement;
      input.modality = Modality::kProfile;
      profile.profile_event_id = store.append_event(input).id;
    }
    if (!previous || !(*previous == profile)) store.upsert_profile(profile);
  }
  tx.commit();
  return by_sender.size();
}

std::optional<double> style_score(const Store& store, std::string_view entity,
                                  std::string_view candidate_text) {
  std::optional<DenseVector> style = store.style_vector(entity);
  if (!style) return std::nullopt;
  return cosine(*style, ngram_vector(candidate_text, kStyleNgrams));
}

}  // namespace vmem

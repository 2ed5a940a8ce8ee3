// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

namespace oracle {

std::vector<std::string> ascii_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

namespace {
void order_hits(std::vector<Hit>& hits, std::size_t k) {
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  if (hits.size() > k) hits.resize(k);
}
}  // namespace

std::vector<Hit> bm25(const std::vector<std::pair<vmem::EventId, std::string>>& docs,
                      const std::string& query, std::size_t k, double k1, double b) {
  std::vector<std::vector<std::string>> tokens;
  long long total = 0;
  for (const auto& d : docs) {
    tokens.push_back(ascii_tokens(d.second));
    total += static_cast<long long>(tokens.back().size());
  }
  const double n = static_cast<double>(docs.size());
  const double avgdl = docs.empty() ? 0.0 : static_cast<double>(total) / n;

  std::vector<std::string> terms;
  for (const auto& t : ascii_tokens(query)) {
    if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
  }
  std::vector<double> idf;
  for (const auto& t : terms) {
    double df = 0;
    for (const auto& doc : tokens) df += std::count(doc.begin(), doc.end(), t) > 0 ? 1 : 0;
    idf.push_back(std::log(1.0 + (n - df + 0.5) / (df + 0.5)));
  }

  std::vector<Hit> hits;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const double dl = static_cast<double>(tokens[i].size());
    double score = 0.0;
    bool matched = false;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const double tf = static_cast<double>(std::count(tokens[i].begin(), tokens[i].end(), terms[t]));
      if (tf == 0) continue;
      matched = true;
      score += idf[t] * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * dl / avgdl));
    }
    if (matched) hits.push_back({docs[i].first, score});
  }
  order_hits(hits, k);
  return hits;
}

double cosine(const vmem::DenseVector& a, const vmem::DenseVector& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < vmem::kVectorDim; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<Hit> cosine_scan(const std::vector<std::pair<vmem::EventId, vmem::DenseVector>>& rows,
                             const vmem::DenseVector& query, std::size_t k) {
  std::vector<Hit> hits;
  for (const auto& [id, v] : rows) hits.push_back({id, oracle::cosine(query, v)});
  order_hits(hits, k);
  return hits;
}

std::uint64_t fnv_splitmix(const std::string& bytes, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> ascii_ngram_counts(const std::string& text, bool fold) {
  std::string padded = " ";
  for (char c : text) padded.push_back(fold ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c);
  padded.push_back(' ');
  std::vector<double> v(256, 0.0);
  for (std::size_t n = 3; n <= 5; ++n) {
    for (std::size_t i = 0; i + n <= padded.size(); ++i) {
      std::uint64_t h = fnv_splitmix(padded.substr(i, n), 0x766d656d2d6e6772ULL);
      v[h % 256] += (h >> 63) ? -1.0 : 1.0;
    }
  }
  return v;
}

std::optional<double> auc_pairs(const std::vector<double>& scores, const std::vector<bool>& labels) {
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (!labels[i] || labels[j]) continue;
      den += 1;
      num += scores[i] > scores[j] ? 1.0 : (scores[i] == scores[j] ? 0.5 : 0.0);
    }
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

double rrf(const std::vector<std::map<vmem::EventId, int>>& lists, const std::vector<double>& weights,
           vmem::EventId id, double k) {
  double s = 0;
  for (std::size_t l = 0; l < lists.size(); ++l) {
    auto it = lists[l].find(id);
    if (it != lists[l].end()) s += weights[l] / (k + it->second);
  }
  return s;
}

std::vector<std::string> random_texts(std::uint64_t seed, std::size_t n, std::size_t min_words,
                                      std::size_t max_words) {
  static const char* kVocab[] = {
      "alpha", "bravo", "charlie", "delta", "echo",  "foxtrot", "golf",   "hotel", "india",  "juliet",
      "kilo",  "lima",  "mike",    "november", "oscar", "papa", "quebec", "romeo", "sierra", "tango",
      "uniform", "victor", "whiskey", "xray", "yankee", "zulu", "red",   "green", "blue",   "river",
      "stone", "cloud", "paper",   "lamp",  "train", "garden", "window", "coffee", "music", "winter",
      "Lisbon", "Porto", "meeting", "report", "42",   "2024",  "7pm",    "budget", "plan",  "trip"};
  constexpr std::size_t kVocabSize = sizeof(kVocab) / sizeof(kVocab[0]);
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t words = min_words + rng() % (max_words - min_words + 1);
    std::string t;
    for (std::size_t w = 0; w < words; ++w) {
      if (!t.empty()) t += (rng() % 7 == 0) ? ", " : " ";
      // Skewed draw so that some terms are frequent and some rare.
      std::size_t a = rng() % kVocabSize;
      std::size_t b = rng() % kVocabSize;
      t += kVocab[std::min(a, b)];
    }
    out.push_back(t);
  }
  return out;
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "vmem-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace oracle

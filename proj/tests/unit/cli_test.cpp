// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "oracles.hpp"
#include "vmem/engine.hpp"

namespace {

using json = nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VMEM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::filesystem::path write_lines(const oracle::TempDir& d, const std::string& name,
                                  const std::vector<std::string>& lines) {
  auto p = d.file(name);
  std::ofstream f(p);
  for (const auto& l : lines) f << l << "\n";
  return p;
}

std::vector<std::string> valid_lines(std::size_t n) {
  std::vector<std::string> out;
  auto texts = oracle::random_texts(300, n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(json{{"text", texts[i]}, {"sender", "s" + std::to_string(i % 3)}, {"timestamp", 1000 + 60 * i}}.dump());
  return out;
}

TEST(Cli, IngestGateOffAdmitsAll) {
  oracle::TempDir d;
  auto in = write_lines(d, "in.jsonl", valid_lines(10));
  auto r = run("--store " + q(d.file("m.db")) + " --gate off ingest --input " + q(in));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["admitted"], 10);
  EXPECT_EQ(j["rejected"], 0);
  EXPECT_TRUE(j["errors"].empty());
  auto s = json::parse(run("--store " + q(d.file("m.db")) + " stats").out);
  EXPECT_EQ(s["event_count"], 10);
}

TEST(Cli, MalformedLineReportedAndSkipped) {
  oracle::TempDir d;
  auto lines = valid_lines(10);
  lines[4] = "{not json";
  auto in = write_lines(d, "in.jsonl", lines);
  auto r = run("--store " + q(d.file("m.db")) + " --gate off ingest --input " + q(in));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["admitted"], 9);
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_EQ(j["errors"][0]["line"], 5);
}

TEST(Cli, GateOnRejectsOk) {
  oracle::TempDir d;
  std::vector<std::string> lines(10, R"({"text":"ok","sender":"a","timestamp":1})");
  auto in = write_lines(d, "in.jsonl", lines);
  auto j = json::parse(run("--store " + q(d.file("m.db")) + " --gate on ingest --input " + q(in)).out);
  EXPECT_EQ(j["rejected"], 10);
  EXPECT_EQ(j["admitted"], 0);
}

TEST(Cli, FreshStatsAllZero) {
  oracle::TempDir d;
  auto r = run("--store " + q(d.file("m.db")) + " stats");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  for (auto it = j.begin(); it != j.end(); ++it) EXPECT_EQ(it.value().get<double>(), 0.0) << it.key();
}

TEST(Cli, QueryEmptyStore) {
  oracle::TempDir d;
  auto r = run("--store " + q(d.file("m.db")) + " query 'anything'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out), json::array());
}

TEST(Cli, QueryKAndOrdering) {
  oracle::TempDir d;
  auto in = write_lines(d, "in.jsonl", valid_lines(80));
  run("--store " + q(d.file("m.db")) + " --gate off ingest --input " + q(in));
  auto r = run("--store " + q(d.file("m.db")) + " query 'river stone coffee' --k 5");
  ASSERT_EQ(r.code, 0);
  auto rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const char* f : {"event_id", "text", "score", "modality", "timestamp"}) EXPECT_TRUE(rows[i].contains(f));
    if (i) EXPECT_GE(rows[i - 1]["score"].get<double>(), rows[i]["score"].get<double>());
  }
  EXPECT_EQ(run("--store " + q(d.file("m.db")) + " query 'river stone coffee' --k 5").out, r.out);
}

TEST(Cli, BatchMatchesEngine) {
  oracle::TempDir d;
  auto lines = valid_lines(40);
  lines.push_back(R"({"text":"Alice lives in Lisbon","sender":"bob","timestamp":5000})");
  lines.push_back(R"({"text":"Alice moved to Porto","sender":"bob","timestamp":5100})");
  lines.push_back(R"({"text":"I love hiking","sender":"bob","timestamp":5200})");
  auto in = write_lines(d, "in.jsonl", lines);
  run("--store " + q(d.file("a.db")) + " --gate off ingest --input " + q(in));
  run("--store " + q(d.file("b.db")) + " --gate off ingest --input " + q(in));
  auto r = run("--store " + q(d.file("a.db")) + " batch");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);

  auto engine = vmem::Engine::open(d.file("b.db"));
  auto rep = engine.run_batch();
  EXPECT_EQ(j["summaries"], rep.summaries);
  EXPECT_EQ(j["contradictions"], rep.contradictions);
  EXPECT_EQ(j["timeline"], rep.timeline);
  EXPECT_EQ(j["links_updated"], rep.links_updated);
  EXPECT_EQ(j["surprise_scored"], rep.surprise_scored);
  EXPECT_EQ(j["entities_refreshed"], rep.entities_refreshed);
  EXPECT_EQ(j["profile_events"], rep.profile_events);
  EXPECT_EQ(j["contradictions"], 1);
}

TEST(Cli, ErrorsExitNonZero) {
  oracle::TempDir d;
  EXPECT_NE(run("stats").code, 0);  // no --store
  EXPECT_NE(run("--store " + q(d.file("m.db")) + " ingest --input /nonexistent.jsonl").code, 0);
  EXPECT_NE(run("--store " + q(d.file("m.db")) + " query x --k 50").code, 0);
  auto junk = d.file("junk.db");
  std::ofstream(junk) << std::string(2048, 'x');
  EXPECT_NE(run("--store " + q(junk) + " stats").code, 0);
}

TEST(Cli, TableFormat) {
  oracle::TempDir d;
  auto in = write_lines(d, "in.jsonl", valid_lines(5));
  run("--store " + q(d.file("m.db")) + " --gate off ingest --input " + q(in));
  auto r = run("--store " + q(d.file("m.db")) + " --format table stats");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("event_count: 5"), std::string::npos);
}

TEST(Cli, BenchGridCsv) {
  auto r = run("bench grid --seed 3 --events 80 --queries 5 --embedders default-hash-256 --rerankers identity,none");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("embedder,reranker,recall_at_k,mrr\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, BenchGenerateDeterministic) {
  auto a = run("bench generate --seed 9 --events 40 --queries 4");
  auto b = run("bench generate --seed 9 --events 40 --queries 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["events"].size(), 40u);
}

}  // namespace

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

// vmem: command-line surface over the memory engine. JSON reports go to
// stdout, diagnostics to stderr.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vmem/bench.hpp"
#include "vmem/config.hpp"
#include "vmem/engine.hpp"
#include "vmem/engram.hpp"
#include "vmem/predictive.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace vmem;

struct Globals {
  std::string store;
  std::string config;
  std::string gate = "on";
  std::string format = "json";
};

EngineConfig load_config(const Globals& g) {
  EngineConfig config;
  if (!g.config.empty()) apply_config_file(g.config, config);
  apply_environment(config);
  if (g.gate == "off") config.gate.tau.reset();
  return config;
}

Engine open_engine(const Globals& g) {
  if (g.store.empty()) throw Error(ErrorCode::kInvalidArgument, "--store is required");
  return Engine::open(g.store, load_config(g));
}

void emit(const Globals& g, const json& report) {
  if (g.format == "json") {
    std::cout << report.dump() << '\n';
    return;
  }
  if (report.is_array()) {
    std::cout << std::left << std::setw(8) << "id" << std::setw(12) << "score" << std::setw(10)
              << "modality" << std::setw(12) << "timestamp" << "text\n";
    for (const auto& row : report) {
      std::ostringstream score;
      score << std::fixed << std::setprecision(6) << row["score"].get<double>();
      std::cout << std::setw(8) << row["event_id"].get<long long>() << std::setw(12) << score.str()
                << std::setw(10) << row["modality"].get<std::string>() << std::setw(12)
                << row["timestamp"].get<long long>() << row["text"].get<std::string>() << '\n';
    }
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

EventInput parse_event(const std::string& line) {
  const json j = json::parse(line);
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  if (!j.contains("text") || !j["text"].is_string()) throw std::invalid_argument("missing string field \"text\"");
  EventInput e;
  e.text = j["text"].get<std::string>();
  if (j.contains("sender") && !j["sender"].is_null()) e.sender = j["sender"].get<std::string>();
  if (j.contains("recipient") && !j["recipient"].is_null()) e.recipient = j["recipient"].get<std::string>();
  if (j.contains("timestamp") && !j["timestamp"].is_null()) {
    if (!j["timestamp"].is_number_integer()) throw std::invalid_argument("timestamp must be an integer");
    e.timestamp = j["timestamp"].get<Timestamp>();
  }
  if (j.contains("category") && !j["category"].is_null()) {
    auto c = parse_category(j["category"].get<std::string>());
    if (!c) throw std::invalid_argument("unknown category");
    e.category = c;
  }
  if (j.contains("modality") && !j["modality"].is_null()) {
    auto m = parse_modality(j["modality"].get<std::string>());
    if (!m) throw std::invalid_argument("unknown modality");
    e.modality = *m;
  }
  return e;
}

json event_json(const EventInput& e) {
  json j{{"text", e.text}, {"sender", e.sender}, {"timestamp", e.timestamp}};
  if (e.recipient) j["recipient"] = *e.recipient;
  return j;
}

json corpus_json(const bench::SyntheticCorpus& c) {
  json events = json::array();
  for (const auto& e : c.events) events.push_back(event_json(e));
  json queries = json::array();
  for (const auto& q : c.queries) queries.push_back({{"text", q.text}, {"relevant", q.relevant}});
  return {{"seed", c.seed}, {"events", events}, {"queries", queries}};
}

bench::SyntheticCorpus read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  const json j = json::parse(in);
  bench::SyntheticCorpus c;
  c.seed = j.value("seed", std::uint64_t{0});
  for (const auto& e : j.at("events")) c.events.push_back(parse_event(e.dump()));
  for (const auto& q : j.at("queries")) {
    c.queries.push_back({q.at("text").get<std::string>(), q.at("relevant").get<std::vector<EventId>>()});
  }
  return c;
}

json metrics_json(const bench::RetrievalMetrics& m, std::size_t k) {
  return {{"k", k}, {"queries", m.queries}, {"recall_at_k", m.recall_at_k}, {"mrr", m.mrr}};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vmem: embedded conversational memory engine"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--store", g.store, "Store file");
  app.add_option("--config", g.config, "Config file")->check(CLI::ExistingFile);
  app.add_option("--gate", g.gate, "Encoding gate")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string input;
  auto* ingest = app.add_subcommand("ingest", "Ingest a JSON Lines file");
  ingest->add_option("--input", input, "JSONL file")->required();

  std::string query_text;
  std::size_t k = 10;
  auto* query = app.add_subcommand("query", "Run a query");
  query->add_option("text", query_text, "Query text")->required();
  query->add_option("--k", k, "Results to return");

  std::optional<std::size_t> window;
  auto* batch = app.add_subcommand("batch", "Consolidate, build the surprise index, update engrams");
  batch->add_option("--window", window, "Consolidation window in events");
  auto* consolidate_cmd = app.add_subcommand("consolidate", "Run consolidation");
  consolidate_cmd->add_option("--window", window, "Window in events");
  auto* surprise_cmd = app.add_subcommand("build-surprise", "Rebuild the surprise index");
  auto* engrams_cmd = app.add_subcommand("update-engrams", "Refresh speaker engrams");
  auto* stats_cmd = app.add_subcommand("stats", "Store statistics");

  auto* bench_cmd = app.add_subcommand("bench", "Evaluation harness");
  bench_cmd->require_subcommand(1);
  std::uint64_t seed = 7;
  std::size_t n_events = 200;
  std::size_t n_queries = 20;
  std::string output;
  std::string corpus_path;
  auto add_corpus_options = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed");
    cmd->add_option("--events", n_events, "Events");
    cmd->add_option("--queries", n_queries, "Queries");
    cmd->add_option("--corpus", corpus_path, "Corpus JSON from 'bench generate'");
  };
  auto* gen_cmd = bench_cmd->add_subcommand("generate", "Write a synthetic corpus as JSON");
  gen_cmd->add_option("--seed", seed, "Seed");
  gen_cmd->add_option("--events", n_events, "Events");
  gen_cmd->add_option("--queries", n_queries, "Queries");
  gen_cmd->add_option("--output", output, "Output file (default stdout)");
  auto* eval_cmd = bench_cmd->add_subcommand("eval", "Retrieval metrics on a fresh in-memory store");
  add_corpus_options(eval_cmd);
  eval_cmd->add_option("--k", k, "Cutoff");
  std::size_t stream_n = 300;
  auto* sweep_cmd = bench_cmd->add_subcommand("sweep", "Gate weight sweep with AUC");
  sweep_cmd->add_option("--seed", seed, "Seed");
  sweep_cmd->add_option("--n", stream_n, "Labelled messages");
  std::string embedders = "default-hash-256,hash-words-256";
  std::string rerankers = "none,identity,overlap-idf";
  auto* grid_cmd = bench_cmd->add_subcommand("grid", "Embedder x reranker grid as CSV");
  add_corpus_options(grid_cmd);
  grid_cmd->add_option("--embedders", embedders, "Comma-separated embedder names");
  grid_cmd->add_option("--rerankers", rerankers, "Comma-separated reranker names");
  grid_cmd->add_option("--k", k, "Cutoff");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      std::ifstream in(input);
      if (!in) throw Error(ErrorCode::kIo, "cannot read " + input);
      Engine engine = open_engine(g);
      std::size_t admitted = 0;
      std::size_t rejected = 0;
      json errors = json::array();
      std::string line;
      std::size_t line_no = 0;
      // Gate decisions read committed state, so batch the writes only when
      // the gate is off.
      std::optional<Store::Transaction> tx;
      if (!engine.config().gate.tau) tx.emplace(engine.store().transaction());
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        EventInput e;
        try {
          e = parse_event(line);
        } catch (const std::exception& ex) {
          std::cerr << "line " << line_no << ": " << ex.what() << '\n';
          errors.push_back({{"line", line_no}, {"error", ex.what()}});
          continue;
        }
        try {
          (engine.ingest(e).admitted ? admitted : rejected)++;
        } catch (const Error& ex) {
          if (ex.code() != ErrorCode::kEmptyText && ex.code() != ErrorCode::kInvalidArgument) throw;
          std::cerr << "line " << line_no << ": " << ex.what() << '\n';
          errors.push_back({{"line", line_no}, {"error", ex.what()}});
        }
      }
      if (tx) tx->commit();
      emit(g, json{{"admitted", admitted}, {"rejected", rejected}, {"errors", errors}});
    } else if (*query) {
      Engine engine = open_engine(g);
      json rows = json::array();
      for (const QueryResult& r : engine.query(query_text, k)) {
        rows.push_back({{"event_id", r.event.id},
                        {"text", r.event.text},
                        {"score", r.score},
                        {"modality", to_string(r.event.modality)},
                        {"timestamp", r.event.timestamp}});
      }
      emit(g, rows);
    } else if (*batch) {
      Engine engine = open_engine(g);
      const BatchReport r = engine.run_batch(window);
      emit(g, json{{"summaries", r.summaries},
                   {"contradictions", r.contradictions},
                   {"timeline", r.timeline},
                   {"links_updated", r.links_updated},
                   {"surprise_scored", r.surprise_scored},
                   {"entities_refreshed", r.entities_refreshed},
                   {"profile_events", r.profile_events}});
    } else if (*consolidate_cmd) {
      Engine engine = open_engine(g);
      ConsolidatorConfig cc = engine.config().consolidator;
      cc.salience = engine.config().salience;
      if (window) cc.window_events = *window;
      const ConsolidationReport r = consolidate(engine.store(), cc);
      emit(g, json{{"summaries", r.summaries.size()},
                   {"contradictions", r.contradictions.size()},
                   {"timeline", r.timeline.size()},
                   {"links_updated", r.links_updated}});
    } else if (*surprise_cmd) {
      Engine engine = open_engine(g);
      emit(g, json{{"scored", build_surprise_index(engine.store(), engine.config().predictive)}});
    } else if (*engrams_cmd) {
      Engine engine = open_engine(g);
      emit(g, json{{"entities", update_engrams(engine.store())}});
    } else if (*stats_cmd) {
      Engine engine = open_engine(g);
      const StoreStats s = engine.stats();
      emit(g, json{{"event_count", s.event_count},
                   {"message_count", s.message_count},
                   {"episode_count", s.episode_count},
                   {"entity_count", s.entity_count},
                   {"summary_count", s.summary_count},
                   {"timeline_count", s.timeline_count},
                   {"contradiction_count", s.contradiction_count},
                   {"surprise_scored", s.surprise_scored},
                   {"surprise_coverage", s.surprise_coverage},
                   {"profile_count", s.profile_count}});
    } else if (*gen_cmd) {
      const std::string body = corpus_json(bench::generate_corpus(seed, n_events, n_queries)).dump(2) + "\n";
      if (output.empty()) {
        std::cout << body;
      } else {
        std::ofstream out(output);
        if (!out) throw Error(ErrorCode::kIo, "cannot write " + output);
        out << body;
      }
    } else if (*eval_cmd) {
      const bench::SyntheticCorpus corpus =
          corpus_path.empty() ? bench::generate_corpus(seed, n_events, n_queries) : read_corpus(corpus_path);
      EngineConfig config = load_config(g);
      config.gate.tau.reset();
      config.fusion.final_k = std::max(config.fusion.final_k, k);
      Engine engine = Engine::open(":memory:", config);
      bench::ingest_corpus(engine, corpus);
      emit(g, metrics_json(bench::eval_retrieval(engine, corpus, k), k));
    } else if (*sweep_cmd) {
      const auto stream = bench::make_labeled_stream(seed, stream_n);
      const EngineConfig config = load_config(g);
      json rows = json::array();
      std::optional<double> best;
      for (const bench::SweepResult& r :
           bench::sweep_gate(stream, bench::default_gate_grid(), config.gate, config.salience)) {
        rows.push_back({{"lambda_n", r.point.lambda_n},
                        {"lambda_s", r.point.lambda_s},
                        {"lambda_pi", r.point.lambda_pi},
                        {"tau", r.point.tau},
                        {"auc", r.auc ? json(*r.auc) : json(nullptr)},
                        {"admitted", r.admitted}});
        if (r.auc && (!best || *r.auc > *best)) best = r.auc;
      }
      std::cout << json{{"messages", stream.size()}, {"best_auc", best ? json(*best) : json(nullptr)},
                        {"results", rows}}
                       .dump()
                << '\n';
    } else if (*grid_cmd) {
      const bench::SyntheticCorpus corpus =
          corpus_path.empty() ? bench::generate_corpus(seed, n_events, n_queries) : read_corpus(corpus_path);
      EngineConfig config = load_config(g);
      config.fusion.final_k = std::max(config.fusion.final_k, k);
      std::cout << bench::grid_csv(bench::run_grid(corpus, split_list(embedders), split_list(rerankers), k, config));
    }
  } catch (const std::exception& e) {
    std::cerr << "vmem: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// Copyright 2026 The vmem Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "vmem/bench.hpp"
#include "vmem/engine.hpp"
#include "vmem/gate.hpp"

namespace {

const vmem::bench::SyntheticCorpus& corpus() {
  static const auto c = vmem::bench::generate_corpus(11, 2000, 50);
  return c;
}

vmem::Engine& loaded_engine() {
  static vmem::Engine engine = [] {
    vmem::EngineConfig config;
    config.gate.tau.reset();
    vmem::Engine e = vmem::Engine::open(":memory:", config);
    vmem::bench::ingest_corpus(e, corpus());
    return e;
  }();
  return engine;
}

void BM_Embed(benchmark::State& state) {
  vmem::HashEmbedder embedder;
  const std::string text = corpus().events.front().text;
  for (auto _ : state) benchmark::DoNotOptimize(embedder.embed(text));
}
BENCHMARK(BM_Embed);

void BM_SearchLexical(benchmark::State& state) {
  const vmem::Store& store = loaded_engine().store();
  for (auto _ : state) benchmark::DoNotOptimize(store.search_lexical("project deadline hotel", 100));
}
BENCHMARK(BM_SearchLexical);

void BM_SearchDense(benchmark::State& state) {
  const vmem::Store& store = loaded_engine().store();
  for (auto _ : state) benchmark::DoNotOptimize(store.search_dense("project deadline hotel", 100));
}
BENCHMARK(BM_SearchDense);

void BM_Query(benchmark::State& state) {
  const vmem::Engine& engine = loaded_engine();
  const auto& queries = corpus().queries;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(engine.query(queries[i++ % queries.size()].text));
}
BENCHMARK(BM_Query);

void BM_GateDecide(benchmark::State& state) {
  const vmem::Store& store = loaded_engine().store();
  vmem::EventInput input;
  input.text = "The Bravelkin project deadline moved to March 14, budget 4000.";
  for (auto _ : state) benchmark::DoNotOptimize(vmem::gate_decide(store, input));
}
BENCHMARK(BM_GateDecide);

}  // namespace

BENCHMARK_MAIN();

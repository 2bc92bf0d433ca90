// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "bugloc/evalbench.hpp"
#include "bugloc/simrank.hpp"
#include "bugloc/synthetic.hpp"
#include "bugloc/textkit.hpp"

namespace {

using namespace bugloc;

struct Corpus {
  SyntheticCorpus synth;
  CorpusIndex index;
};

// Built once per size; generating 10k files takes a few seconds.
const Corpus& corpus(std::size_t files) {
  static std::map<std::size_t, std::unique_ptr<Corpus>> cache;
  auto& slot = cache[files];
  if (!slot) {
    SyntheticOptions options;
    options.files = files;
    options.defects = 10;
    slot = std::make_unique<Corpus>();
    slot->synth = make_synthetic(options);
    slot->index = build_index(slot->synth.documents, slot->synth.reports);
  }
  return *slot;
}

void BM_Rank(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  WeightModel model;
  for (const auto& key : all_feature_keys()) model.set(key, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank(c.synth.reports.front(), c.synth.documents, model, c.index));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rank)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TokenizeCode(benchmark::State& state) {
  const auto& text = corpus(1000).synth.files.front().text;
  for (auto _ : state) benchmark::DoNotOptimize(tokenize_code(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_TokenizeCode);

void BM_Similarity(benchmark::State& state) {
  const auto& c = corpus(1000);
  const auto& report = c.synth.reports.front().body;
  const auto& file = c.synth.documents.front().whole_file;
  for (auto _ : state) benchmark::DoNotOptimize(similarity(report, file, c.index));
}
BENCHMARK(BM_Similarity);

void BM_ScoreValues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = static_cast<double>(rng() % 1000);
  std::vector<std::uint8_t> fixed(values.size(), 0);
  fixed[values.size() / 2] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(score_values(values, fixed));
}
BENCHMARK(BM_ScoreValues)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();

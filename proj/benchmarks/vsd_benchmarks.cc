// Copyright 2026 The vsdstruct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <random>

#include "vsd/features.h"
#include "vsd/forest.h"
#include "vsd/pipeline.h"
#include "vsd/structure_tree.h"
#include "vsd/synth.h"
#include "vsd/text_cues.h"

namespace {

std::vector<vsd::SynthDocument> Corpus(int documents, vsd::DocType type) {
  vsd::SynthSpec spec;
  spec.documents = documents;
  spec.doc_type = type;
  return vsd::Synthesize(spec, 42);
}

void BM_ForestFit(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  const int n = static_cast<int>(state.range(0));
  std::vector<vsd::FeatureRow> rows(n, vsd::FeatureRow(50));
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    for (auto& v : rows[i]) v = u(rng) < 0.3;
    labels[i] = static_cast<int>(rows[i][0] + 2 * rows[i][1]);
  }
  vsd::ForestConfig config;
  config.n_trees = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vsd::Forest::Fit(rows, labels, 5, config));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ForestFit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ForestPredict(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<vsd::FeatureRow> rows(1000, vsd::FeatureRow(50));
  std::vector<int> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto& v : rows[i]) v = u(rng) < 0.3;
    labels[i] = static_cast<int>(rows[i][0] + 2 * rows[i][1]);
  }
  const auto forest = vsd::Forest::Fit(rows, labels, 5, {});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forest.PredictProba(rows[i++ % rows.size()]));
  }
}
BENCHMARK(BM_ForestPredict);

void BM_TransitionFeatures(benchmark::State& state) {
  const auto docs = Corpus(1, static_cast<vsd::DocType>(state.range(0)));
  const auto& doc = docs[0].labeled.doc;
  const auto registry = vsd::FeatureRegistry::ForDocType(doc.doc_type);
  const std::vector<bool> mask(doc.blocks.size(), false);
  for (auto _ : state) {
    const auto analysis = vsd::AnalyzeDocument(doc);
    benchmark::DoNotOptimize(
        vsd::TransitionFeatureMatrix(analysis, mask, registry, nullptr));
  }
  state.SetItemsProcessed(state.iterations() * doc.blocks.size());
}
BENCHMARK(BM_TransitionFeatures)
    ->Arg(static_cast<int>(vsd::DocType::kContractPdfEn))
    ->Arg(static_cast<int>(vsd::DocType::kContractTxtEn));

void BM_Predict(benchmark::State& state) {
  const auto docs = Corpus(12, vsd::DocType::kContractPdfEn);
  std::vector<vsd::LabeledDocument> train;
  for (int i = 0; i < 10; ++i) train.push_back(docs[i].labeled);
  vsd::TrainConfig config;
  config.forest.n_trees = 50;
  const auto bundle = vsd::Train(train, config);
  const auto& doc = docs[11].labeled.doc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vsd::Predict(doc, bundle));
  }
  state.SetItemsProcessed(state.iterations() * doc.blocks.size());
}
BENCHMARK(BM_Predict)->Unit(benchmark::kMillisecond);

void BM_Levenshtein(benchmark::State& state) {
  const std::string a(state.range(0), 'a');
  std::string b = a;
  for (std::size_t i = 0; i < b.size(); i += 3) b[i] = 'b';
  for (auto _ : state) benchmark::DoNotOptimize(vsd::Levenshtein(a, b));
}
BENCHMARK(BM_Levenshtein)->Arg(16)->Arg(64)->Arg(256);

void BM_BuildTree(benchmark::State& state) {
  const auto docs = Corpus(1, vsd::DocType::kContractPdfEn);
  const auto& gold = docs[0].labeled.gold;
  for (auto _ : state) {
    const auto tree = vsd::BuildTree(gold);
    benchmark::DoNotOptimize(vsd::BuildRelationshipMatrix(tree));
  }
}
BENCHMARK(BM_BuildTree);

}  // namespace

BENCHMARK_MAIN();

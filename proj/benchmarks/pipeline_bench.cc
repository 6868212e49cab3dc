// Copyright 2026 The gemify Authors.
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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gemify/gem.h"
#include "gemify/lexicon.h"
#include "gemify/pipeline.h"
#include "gemify/segmenter.h"

namespace {

using namespace gemify;

std::string Slurp(const std::string &name) {
  std::ifstream in(std::filesystem::path(GEMIFY_FIXTURES_DIR) / name,
                   std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const LexiconPack &Pack() {
  static const LexiconPack *pack = new LexiconPack(LexiconPack::Load(
      std::filesystem::path(GEMIFY_BENCH_DATA_DIR) / "lexicons" / "fr"));
  return *pack;
}

PipelineOptions Options() {
  PipelineOptions o;
  o.document = default_document_options(Pack());
  return o;
}

const char *const kFixtures[] = {"colon_biopsy.txt", "insulin.txt", "statin.txt",
                                 "headings.txt"};

void BM_Pipeline(benchmark::State &state) {
  const std::string text = Slurp(kFixtures[state.range(0)]);
  const PipelineOptions opts = Options();
  for (auto _ : state) {
    auto result = run_pipeline(text, Pack(), opts, "bench");
    benchmark::DoNotOptimize(result.xml);
  }
  state.SetLabel(kFixtures[state.range(0)]);
  state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(text.size()));
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 3);

// The same document repeated, to watch scaling with length.
void BM_PipelineScaling(benchmark::State &state) {
  const std::string unit = Slurp("statin.txt");
  std::string text;
  for (int64_t i = 0; i < state.range(0); ++i) text += unit + "\n";
  const PipelineOptions opts = Options();
  for (auto _ : state) {
    auto result = run_pipeline(text, Pack(), opts, "bench");
    benchmark::DoNotOptimize(result.couples);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PipelineScaling)->RangeMultiplier(4)->Range(1, 64)->Complexity();

void BM_ParseDocument(benchmark::State &state) {
  const std::string text = Slurp("headings.txt");
  const DocumentOptions opts = default_document_options(Pack());
  for (auto _ : state) {
    auto doc = parse_document(text, Pack(), opts, "bench");
    benchmark::DoNotOptimize(doc.clauses);
  }
}
BENCHMARK(BM_ParseDocument);

void BM_Classify(benchmark::State &state) {
  const auto result = run_pipeline(Slurp("statin.txt"), Pack(), Options());
  const RuleTable table = default_rule_table();
  for (auto _ : state) {
    auto segments = classify_segments(result.store, result.document, table);
    benchmark::DoNotOptimize(segments);
  }
}
BENCHMARK(BM_Classify);

// Labels follow the connector and verb cues, with some noise features.
std::vector<LabeledClause> SyntheticCorpus(int clauses) {
  const std::string condition =
      "cue:" + std::string(to_string(CueClass::kConditionConnector));
  const std::string injunctive =
      "cue:" + std::string(to_string(CueClass::kInjunctiveVerb));
  const std::vector<std::string> features = {
      condition,
      injunctive,
      "cue:" + std::string(to_string(CueClass::kJustificationMarker)),
      "cue:" + std::string(to_string(CueClass::kDeonticModal)),
      "init:" + condition,
      "tense:present",
      "mood:infinitive",
      "pos:VERB"};
  std::mt19937 rng(7);
  std::bernoulli_distribution coin(0.35);
  std::vector<LabeledClause> corpus(clauses);
  for (auto &c : corpus) {
    for (const auto &f : features)
      if (coin(rng)) c.features.insert(f);
    if (c.features.count(condition))
      c.label = SegmentKind::kCondition;
    else if (c.features.count(injunctive))
      c.label = SegmentKind::kAction;
  }
  return corpus;
}

void BM_Train(benchmark::State &state) {
  const auto corpus = SyntheticCorpus(int(state.range(0)));
  for (auto _ : state) {
    auto table = train_from_clauses(corpus);
    benchmark::DoNotOptimize(table.rules);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Train)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_EmitXml(benchmark::State &state) {
  const GemDocument doc = parse_gem(Slurp("colon_biopsy.gem.xml"), "colon_biopsy");
  for (auto _ : state) benchmark::DoNotOptimize(emit_xml(doc));
}
BENCHMARK(BM_EmitXml);

void BM_ParseGem(benchmark::State &state) {
  const std::string xml = Slurp("colon_biopsy.gem.xml");
  for (auto _ : state) benchmark::DoNotOptimize(parse_gem(xml, "colon_biopsy"));
}
BENCHMARK(BM_ParseGem);

}  // namespace

BENCHMARK_MAIN();

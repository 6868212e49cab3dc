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

#ifndef GEMIFY_PIPELINE_H_
#define GEMIFY_PIPELINE_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/cues.h"
#include "gemify/document.h"
#include "gemify/fact_store.h"
#include "gemify/gem.h"
#include "gemify/lexicon.h"
#include "gemify/scope.h"
#include "gemify/segmenter.h"

namespace gemify {

// Declared stage order; a stage's position is its write priority.
inline constexpr std::string_view kStageOrder[] = {
    "material-structure", "morphology",    "cues",     "segmentation",
    "default-scopes",     "revision",      "emission"};

inline constexpr std::string_view kMaterialStructure = kStageOrder[0];
inline constexpr std::string_view kMorphology = kStageOrder[1];
inline constexpr std::string_view kCues = kStageOrder[2];
inline constexpr std::string_view kSegmentation = kStageOrder[3];
inline constexpr std::string_view kDefaultScopes = kStageOrder[4];
inline constexpr std::string_view kRevision = kStageOrder[5];
inline constexpr std::string_view kEmission = kStageOrder[6];

std::vector<std::string> all_stages();

// The declared order minus `disabled`. Throws StageError for unknown names
// and for stages that cannot be skipped (material-structure, morphology,
// emission).
std::vector<std::string> stages_without(const std::vector<std::string> &disabled);

struct PipelineOptions {
  DocumentOptions document;
  RuleTable rules = default_rule_table();
  bool domain_lexicon = true;
  GemNames gem_names = GemNames::kFrench;
  const Sidecar *sidecar = nullptr;
  std::vector<std::string> stages = all_stages();
  // Called after each completed stage; an exception thrown here fails that
  // stage like any other.
  std::function<void(std::string_view stage, const FactStore &)> after_stage;
};

struct PipelineResult {
  Document document;
  FactStore store;
  Morphology morphology;
  std::vector<BasicSegment> segments;
  ScopeTree default_tree;
  ScopeTree tree;
  std::vector<Couple> couples;
  std::vector<Couple> explanations;
  GemDocument gem;
  std::string xml;
};

// The facilitator. Throws StageError if `options.stages` is not a
// subsequence of the declared order, IngestError for malformed input, and
// PipelineError(stage, last clause) when a stage fails.
PipelineResult run_pipeline(std::string_view text, const LexiconPack &pack,
                            const PipelineOptions &options,
                            std::string source_id = "");

struct TrainingDocument {
  std::string doc_id;
  std::string text;
  std::vector<StandoffSegment> gold;
};

// Runs the cue stages on every document and scores feature conjunctions
// against the gold labels. Throws ConfigError with fewer than 2 documents
// and FormatError on untyped gold labels or foreign doc ids.
RuleTable train_bundles(const std::vector<TrainingDocument> &corpus,
                        const LexiconPack &pack, const PipelineOptions &options,
                        double threshold = kDefaultThreshold);

struct PipelineStats {
  int frames = 0;
  int heading_frames = 0;
  int enum_frames = 0;
  int detached_frames = 0;
  int included_frames = 0;
  int revised_frames = 0;
  double default_rule_share = 1;
};

PipelineStats compute_stats(const PipelineResult &result);
std::string format_stats(const PipelineStats &stats);

}  // namespace gemify

#endif  // GEMIFY_PIPELINE_H_

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

#include "gemify/pipeline.h"

#include <algorithm>
#include <cstdio>

#include "gemify/errors.h"

namespace gemify {
namespace {

bool skippable(std::string_view stage) {
  return stage != kMaterialStructure && stage != kMorphology &&
         stage != kEmission;
}

int last_clause_of(const FactStore &store, std::string_view stage) {
  int last = -1;
  for (const Annotation &a : store.annotations()) {
    if (a.producer == stage) last = std::max(last, a.clause_index);
  }
  return last;
}

}  // namespace

std::vector<std::string> all_stages() {
  return {std::begin(kStageOrder), std::end(kStageOrder)};
}

std::vector<std::string> stages_without(const std::vector<std::string> &disabled) {
  for (const std::string &name : disabled) {
    auto it = std::find(std::begin(kStageOrder), std::end(kStageOrder), name);
    if (it == std::end(kStageOrder)) {
      throw StageError("unknown stage '" + name + "'");
    }
    if (!skippable(name)) throw StageError("stage '" + name + "' cannot be disabled");
  }
  std::vector<std::string> out;
  for (std::string_view stage : kStageOrder) {
    if (std::find(disabled.begin(), disabled.end(), stage) == disabled.end()) {
      out.emplace_back(stage);
    }
  }
  return out;
}

PipelineResult run_pipeline(std::string_view text, const LexiconPack &pack,
                            const PipelineOptions &options,
                            std::string source_id) {
  // The requested list must follow the declared order.
  size_t cursor = 0;
  for (const std::string &name : options.stages) {
    auto it = std::find(std::begin(kStageOrder) + cursor, std::end(kStageOrder), name);
    if (it == std::end(kStageOrder)) {
      throw StageError("stage list violates the declared order at '" + name + "'");
    }
    cursor = static_cast<size_t>(it - std::begin(kStageOrder)) + 1;
  }
  for (std::string_view required : {kMaterialStructure, kMorphology, kEmission}) {
    if (std::find(options.stages.begin(), options.stages.end(), required) ==
        options.stages.end()) {
      throw StageError("stage '" + std::string(required) + "' is required");
    }
  }

  PipelineResult r;
  for (size_t i = 0; i < std::size(kStageOrder); ++i) {
    r.store.RegisterStage(std::string(kStageOrder[i]), static_cast<int>(i));
  }
  auto enabled = [&](std::string_view stage) {
    return std::find(options.stages.begin(), options.stages.end(), stage) !=
           options.stages.end();
  };
  auto run = [&](std::string_view stage, auto &&body) {
    if (!enabled(stage)) return false;
    r.store.BeginStage(stage);
    try {
      body();
      if (options.after_stage) options.after_stage(stage, r.store);
    } catch (const IngestError &) {
      throw;
    } catch (const PipelineError &) {
      throw;
    } catch (const std::exception &e) {
      throw PipelineError(std::string(stage), last_clause_of(r.store, stage),
                          e.what());
    }
    r.store.EndStage();
    return true;
  };

  run(kMaterialStructure, [&] {
    r.document = parse_document(text, pack, options.document, std::move(source_id));
  });
  run(kMorphology, [&] {
    r.morphology = analyze_morphology(r.document, pack.inflections, options.sidecar);
  });
  run(kCues, [&] {
    match_cues(r.store, r.document, pack, r.morphology, kCues);
    detect_anaphora(r.store, r.document, pack, r.morphology, kCues);
    if (options.domain_lexicon) {
      tag_domain_titles(r.store, r.document, pack.domain, pack, r.morphology, kCues);
    }
    apply_morphology(r.store, r.document, r.morphology, kCues);
  });
  const bool segmented = run(kSegmentation, [&] {
    r.segments = classify_segments(r.store, r.document, options.rules);
  });
  if (!segmented) r.segments = classify_segments(r.store, r.document, RuleTable{});
  const bool scoped = run(kDefaultScopes, [&] {
    r.default_tree = apply_default_scopes(r.segments, r.document, r.store);
  });
  if (!scoped) r.default_tree = root_only_tree(r.segments, r.document, r.store);
  const bool revised = run(kRevision, [&] {
    r.tree = revise_scopes(r.default_tree, r.store, r.document);
    for (const Frame &f : r.tree.frames) {
      for (const RevisionEntry &e : f.revision_log) {
        r.store.RecordFrameEvent({f.id, e.cue_id, e.action, e.before, e.after, ""});
      }
    }
    for (const std::string &w : r.tree.warnings) r.store.Warn(-1, w);
  });
  if (!revised) r.tree = r.default_tree;
  run(kEmission, [&] {
    r.couples = flatten_couples(r.tree, r.document);
    r.explanations = flatten_explanations(r.tree, r.document);
    std::vector<std::string> warnings;
    r.gem.source_id = r.document.source_id;
    r.gem.recommendations = group_couples(r.couples, r.explanations, &warnings);
    for (const std::string &w : warnings) r.store.Warn(-1, w);
    r.xml = emit_xml(r.gem, options.gem_names);
  });
  return r;
}

RuleTable train_bundles(const std::vector<TrainingDocument> &corpus,
                        const LexiconPack &pack, const PipelineOptions &options,
                        double threshold) {
  if (corpus.size() < 2) {
    throw ConfigError("training needs at least 2 annotated documents");
  }
  PipelineOptions cue_only = options;
  cue_only.stages = {std::string(kMaterialStructure), std::string(kMorphology),
                     std::string(kCues), std::string(kEmission)};
  std::vector<LabeledClause> clauses;
  for (const TrainingDocument &doc : corpus) {
    for (const StandoffSegment &g : doc.gold) {
      if (g.kind == SegmentKind::kUntyped) {
        throw FormatError(0, doc.doc_id + ": gold labels must be Condition, "
                                          "Action or Explanation");
      }
      if (g.doc_id != doc.doc_id) {
        throw FormatError(0, "gold segment for '" + g.doc_id + "' in " + doc.doc_id);
      }
    }
    PipelineResult r = run_pipeline(doc.text, pack, cue_only, doc.doc_id);
    auto labeled = label_clauses(clause_features(r.store, r.document), doc.gold);
    clauses.insert(clauses.end(), labeled.begin(), labeled.end());
  }
  return train_from_clauses(clauses, threshold);
}

PipelineStats compute_stats(const PipelineResult &result) {
  PipelineStats s;
  for (const Frame &f : result.tree.frames) {
    switch (f.origin) {
      case FrameOrigin::kRoot: continue;
      case FrameOrigin::kHeading: ++s.heading_frames; break;
      case FrameOrigin::kEnum: ++s.enum_frames; break;
      case FrameOrigin::kDetached: ++s.detached_frames; break;
      case FrameOrigin::kIncluded: ++s.included_frames; break;
    }
    ++s.frames;
    if (!f.revision_log.empty()) ++s.revised_frames;
  }
  s.default_rule_share = default_rule_share(result.tree);
  return s;
}

std::string format_stats(const PipelineStats &s) {
  char share[32];
  std::snprintf(share, sizeof(share), "%.4f", s.default_rule_share);
  return "frames=" + std::to_string(s.frames) +
         "\nheading_frames=" + std::to_string(s.heading_frames) +
         "\nenum_frames=" + std::to_string(s.enum_frames) +
         "\ndetached_frames=" + std::to_string(s.detached_frames) +
         "\nincluded_frames=" + std::to_string(s.included_frames) +
         "\nrevised_frames=" + std::to_string(s.revised_frames) +
         "\ndefault_rule_share=" + share + "\n";
}

}  // namespace gemify

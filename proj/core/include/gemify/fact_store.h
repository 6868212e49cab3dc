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

#ifndef GEMIFY_FACT_STORE_H_
#define GEMIFY_FACT_STORE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/document.h"
#include "gemify/lexicon.h"

namespace gemify {

// A cue fact anchored to a clause. `span` is relative to the clause text.
struct Annotation {
  int id = -1;
  int clause_index = 0;
  CharSpan span;
  CueClass cue_class = CueClass::kConditionConnector;
  std::map<std::string, std::string> features;
  std::string producer;

  std::string feature(std::string_view key,
                      std::string_view fallback = "") const;
  bool has_feature(std::string_view key, std::string_view value) const {
    return feature(key) == value;
  }
};

enum class RevisionAction { kExtended, kClosed };
std::string_view to_string(RevisionAction action);

// Boundary change of a frame, recorded by the revision stage so the default
// analysis stays inspectable.
struct FrameEvent {
  int frame_id = 0;
  int cue_id = -1;
  RevisionAction action = RevisionAction::kExtended;
  ClauseRange before;
  ClauseRange after;
  std::string producer;
};

struct SupersedeFact {
  int old_id = -1;
  int replacement_id = -1;  // -1: retracted without replacement
  std::string producer;
};

struct StoreWarning {
  std::string producer;
  int clause = -1;
  std::string message;
};

// The blackboard: annotations indexed by clause and by cue class, plus the
// ordered log of completed stages. Nothing is ever erased; superseding an
// annotation hides it from queries.
//
// Writers must be the currently scheduled stage. Conflicting typings of the
// same span by different stages resolve to the higher-priority (later) stage.
class FactStore {
 public:
  void RegisterStage(std::string name, int priority);
  bool IsRegistered(std::string_view name) const;

  // Throws StageError if the stage is unknown, already completed, or another
  // stage is running.
  void BeginStage(std::string_view name);
  void EndStage();
  const std::string &active_stage() const { return active_; }

  // Returns the id of the stored annotation. Posting a duplicate
  // (clause, span, class, producer) of a live annotation returns the existing
  // id. Throws StageError if `ann.producer` is not the active stage.
  int Post(Annotation ann);

  // Hides `old_id` and optionally posts a replacement. Returns the
  // replacement id or -1.
  int Supersede(int old_id, std::optional<Annotation> replacement);

  void RecordFrameEvent(FrameEvent event);
  void Warn(int clause, std::string message);

  // Live annotations overlapping `range`, sorted by (clause, span start).
  std::vector<Annotation> Query(ClauseRange range,
                                std::optional<CueClass> cls = {}) const;
  std::vector<Annotation> QueryClause(int clause,
                                      std::optional<CueClass> cls = {}) const {
    return Query({clause, clause}, cls);
  }

  const Annotation *Find(int id) const;
  bool IsLive(int id) const;

  const std::vector<Annotation> &annotations() const { return annotations_; }
  size_t size() const { return annotations_.size(); }
  const std::vector<std::string> &stage_log() const { return log_; }
  const std::vector<FrameEvent> &frame_events() const { return events_; }
  const std::vector<SupersedeFact> &supersedes() const { return supersedes_; }
  const std::vector<StoreWarning> &warnings() const { return warnings_; }

 private:
  void RequireActive(std::string_view producer) const;
  int Priority(std::string_view producer) const;

  std::map<std::string, int, std::less<>> stages_;
  std::string active_;
  std::vector<std::string> log_;

  std::vector<Annotation> annotations_;
  std::vector<bool> live_;
  std::map<int, std::vector<int>> by_clause_;
  std::map<CueClass, std::vector<int>> by_class_;
  std::vector<SupersedeFact> supersedes_;
  std::vector<FrameEvent> events_;
  std::vector<StoreWarning> warnings_;
};

std::string format_features(const std::map<std::string, std::string> &features);

// One line per live annotation:
// clause_idx<TAB>begin:end<TAB>cue_class<TAB>k=v;k=v<TAB>producer
std::string dump_cues(const FactStore &store);
// Parses dump_cues output (ids are assigned in line order).
std::vector<Annotation> parse_cue_dump(std::string_view dump);

// Full store dump: every annotation with its liveness, supersede facts,
// frame events, warnings and the stage log.
std::string dump_facts(const FactStore &store);

}  // namespace gemify

#endif  // GEMIFY_FACT_STORE_H_

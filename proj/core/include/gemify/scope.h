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

#ifndef GEMIFY_SCOPE_H_
#define GEMIFY_SCOPE_H_

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gemify/document.h"
#include "gemify/fact_store.h"
#include "gemify/segmenter.h"

namespace gemify {

enum class FrameOrigin { kRoot, kHeading, kEnum, kDetached, kIncluded };

std::string_view to_string(FrameOrigin origin);

struct RevisionEntry {
  int cue_id = -1;
  RevisionAction action = RevisionAction::kExtended;
  ClauseRange before;
  ClauseRange after;

  friend bool operator==(const RevisionEntry &, const RevisionEntry &) = default;
};

// A condition (or stacked conditions) and the clauses it governs.
struct Frame {
  int id = 0;
  FrameOrigin origin = FrameOrigin::kRoot;
  std::vector<int> conditions;  // segment indices, document order
  ClauseRange scope;
  ClauseRange default_scope;
  // Whole sentences added by anaphoric continuation. They lie outside the
  // nesting structure: a clause may be covered by several extensions.
  std::vector<ClauseRange> extensions;
  std::vector<RevisionEntry> revision_log;
  int parent = -1;

  bool covers(int clause) const;  // scope or any extension
  friend bool operator==(const Frame &, const Frame &) = default;
};

struct ScopeTree {
  std::vector<BasicSegment> segments;
  std::vector<Frame> frames;  // frames[0] is the root
  // attachments[i]: frames governing segment i. Actions and explanations
  // have at least one entry; conditions and untyped segments none.
  std::vector<std::vector<int>> attachments;
  std::vector<int> consumed_cues;             // markers and anaphors applied
  std::vector<std::pair<int, int>> closures;  // (cue id, frame closed)
  std::vector<std::string> warnings;

  const Frame &root() const { return frames.front(); }
  int depth(int frame) const;
  // Frames other than the root, in nesting order (open asc, close desc).
  std::vector<int> ordered_frames() const;

  friend bool operator==(const ScopeTree &, const ScopeTree &) = default;
};

// Rules: heading conditions govern up to the next heading of the same or a
// higher level; enumeration-header conditions govern the items; detached
// conditions govern the rest of their block; included conditions govern
// their sentence. A new detached frame nests inside open frames unless it
// repeats the leading connector word of an open frame of the same block,
// which then closes at the end of the previous sentence.
ScopeTree apply_default_scopes(std::vector<BasicSegment> segments,
                               const Document &doc, const FactStore &store);

// A tree with the root frame only: every action attaches to the root.
ScopeTree root_only_tree(std::vector<BasicSegment> segments,
                         const Document &doc, const FactStore &store);

using RevisionObserver = std::function<void(const ScopeTree &)>;

// Closure and extension passes repeated to a fixpoint. `observer` sees the
// tree after every single boundary change.
ScopeTree revise_scopes(ScopeTree tree, const FactStore &store,
                        const Document &doc,
                        const RevisionObserver &observer = {});

// Main scopes pairwise disjoint or nested, children inside parents.
bool is_laminar(const ScopeTree &tree);

// Fraction of detached/included frames left untouched by revision (1 when
// there are none).
double default_rule_share(const ScopeTree &tree);

struct Couple {
  std::vector<std::string> chain;  // outermost condition first
  std::string action;
  int segment = -1;  // -1 when read from a file
  int frame = -1;

  friend bool operator==(const Couple &a, const Couple &b) {
    return a.chain == b.chain && a.action == b.action;
  }
};

// One couple per (action segment, governing frame), document order.
std::vector<Couple> flatten_couples(const ScopeTree &tree, const Document &doc);
// Same shape for explanation segments.
std::vector<Couple> flatten_explanations(const ScopeTree &tree,
                                         const Document &doc);
std::vector<std::string> condition_chain(const ScopeTree &tree,
                                         const Document &doc, int frame);

inline constexpr std::string_view kChainSeparator = " || ";

// chain joined by " || "<TAB>action
std::string format_couples(const std::vector<Couple> &couples);
// Throws FormatError.
std::vector<Couple> parse_couples(std::string_view contents);

// Indented tree, one line per node: "kind | text | [first..last]".
std::string format_tree(const ScopeTree &tree, const Document &doc);

struct TreeLine {
  int depth = 0;
  std::string kind;
  std::string text;
  ClauseRange range;

  friend bool operator==(const TreeLine &, const TreeLine &) = default;
};
// Throws FormatError.
std::vector<TreeLine> parse_tree(std::string_view contents);

}  // namespace gemify

#endif  // GEMIFY_SCOPE_H_

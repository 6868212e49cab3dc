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

#ifndef GEMIFY_SEGMENTER_H_
#define GEMIFY_SEGMENTER_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/document.h"
#include "gemify/fact_store.h"

namespace gemify {

enum class SegmentKind { kCondition, kAction, kExplanation, kUntyped };

std::string_view to_string(SegmentKind kind);
std::optional<SegmentKind> parse_segment_kind(std::string_view name);

// A typed clause range inside one sentence.
struct BasicSegment {
  SegmentKind kind = SegmentKind::kUntyped;
  ClauseRange clauses;
  std::vector<int> triggers;  // annotation ids
  bool detached = false;      // no Action/Explanation precedes it

  friend bool operator==(const BasicSegment &, const BasicSegment &) = default;
};

// Clause features seen by the rules:
//   cue:C, suppressed:C, init:C, sent_init:C, tense:T, mood:M,
//   pos:initial|medial|final
using FeatureSet = std::set<std::string>;

// True for features derived from a cue fact (every rule needs one).
bool is_cue_feature(std::string_view feature);

struct Rule {
  std::vector<std::string> features;  // sorted conjunction
  SegmentKind kind = SegmentKind::kUntyped;
  double score = 0;

  // "feat&feat=>Kind"
  std::string key() const;
  // Rules with a sent_init: feature type the whole sentence.
  bool sentence_level() const;
  bool fires(const FeatureSet &clause) const;

  friend bool operator==(const Rule &, const Rule &) = default;
};

inline constexpr double kDefaultThreshold = 3.841;  // chi-square, 1 d.f.

struct RuleTable {
  std::vector<Rule> rules;
  double threshold = kDefaultThreshold;

  friend bool operator==(const RuleTable &, const RuleTable &) = default;
};

RuleTable default_rule_table();

// One rule per line, "feat&feat=>Kind<TAB>score", plus "#threshold=X".
std::string format_rule_table(const RuleTable &table);
// Throws FormatError.
RuleTable parse_rule_table(std::string_view contents);
RuleTable load_rule_table(const std::filesystem::path &file);

std::vector<FeatureSet> clause_features(const FactStore &store,
                                        const Document &doc);

// Segments cover every clause exactly once, in order.
std::vector<BasicSegment> classify_segments(const FactStore &store,
                                            const Document &doc,
                                            const RuleTable &table);

// --- Training ---------------------------------------------------------------

double chi_square(double a, double b, double c, double d);

struct LabeledClause {
  FeatureSet features;
  SegmentKind label = SegmentKind::kUntyped;
};

// Scores every cue-bearing conjunction of at most 3 features against each
// kind and keeps positive associations at or above `threshold`. A
// conjunction covering exactly the clauses of one of its subsets is dropped
// in favour of the subset.
RuleTable train_from_clauses(const std::vector<LabeledClause> &clauses,
                             double threshold = kDefaultThreshold);

inline constexpr size_t kMaxConjunction = 3;

// Standoff segment: doc_id<TAB>first<TAB>last<TAB>kind[<TAB>text]
struct StandoffSegment {
  std::string doc_id;
  ClauseRange clauses;
  SegmentKind kind = SegmentKind::kUntyped;
  std::string text;
};

// Throws FormatError with the offending line.
std::vector<StandoffSegment> parse_standoff(std::string_view contents);
// Typed segments only, so a dump can be corrected into gold.
std::string format_standoff(std::string_view doc_id, const Document &doc,
                            const std::vector<BasicSegment> &segments);

// Labels clauses of one document from its gold segments (others Untyped).
std::vector<LabeledClause> label_clauses(
    const std::vector<FeatureSet> &features,
    const std::vector<StandoffSegment> &gold);

}  // namespace gemify

#endif  // GEMIFY_SEGMENTER_H_

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

#ifndef GEMIFY_EVAL_H_
#define GEMIFY_EVAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/scope.h"
#include "gemify/segmenter.h"

namespace gemify {

// Collapses whitespace and strips trailing parenthesized groups and
// punctuation: "X (accord professionnel)." -> "X".
std::string normalize_segment(std::string_view text);

// Lenient segment equality: omitting trailing parenthetical material is
// fine, truncating the core text is not.
bool match_segment(std::string_view pred, std::string_view gold);

// 2PR/(P+R), 0 when P+R = 0.
double p_and_r(double precision, double recall);

struct PrfScore {
  size_t predicted = 0;
  size_t gold = 0;
  size_t matched = 0;  // one-to-one matches
  double precision = 0;
  double recall = 0;
  double p_and_r = 0;
  // Set when a ratio had a zero denominator and was reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

PrfScore prf_from_counts(size_t matched, size_t predicted, size_t gold);

// Segments of one kind (or every typed kind when `kind` is empty). Items
// match on doc id, kind and text; items without text match on range.
PrfScore score_segments(const std::vector<StandoffSegment> &pred,
                        const std::vector<StandoffSegment> &gold,
                        std::optional<SegmentKind> kind = std::nullopt);

bool match_couple(const Couple &pred, const Couple &gold);
// Size of a one-to-one matching between the two couple sets.
size_t common_couples(const std::vector<Couple> &a, const std::vector<Couple> &b);

struct ScopeScore {
  size_t common = 0;
  size_t predicted = 0;
  size_t gold = 0;
  double accuracy = 0;
};

// Throws EmptyGoldError when `gold` is empty.
ScopeScore score_scope(const std::vector<Couple> &pred,
                       const std::vector<Couple> &gold);

struct Agreement {
  size_t common = 0;
  double a_given_b = 0;  // common / |b|
  double b_given_a = 0;  // common / |a|
  double mean = 0;
};

Agreement agreement(const std::vector<Couple> &a, const std::vector<Couple> &b);

enum class EvalFileKind { kCouples, kSegments };
// Two columns: couple TSV; four or five: segment standoff. Throws
// FormatError otherwise.
EvalFileKind detect_eval_file(std::string_view contents);

struct EvalReport {
  struct KindRow {
    std::string kind;
    PrfScore score;
  };
  std::vector<KindRow> segments;  // per kind, then "all"
  std::optional<ScopeScore> scope;
  std::optional<Agreement> agreement;
};

// Scores a prediction file against a gold file of the same kind.
EvalReport evaluate_files(std::string_view pred, std::string_view gold);

// Aligned table followed by key=value lines.
std::string format_report(const EvalReport &report);

}  // namespace gemify

#endif  // GEMIFY_EVAL_H_

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

#include "gemify/eval.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "gemify/errors.h"

namespace gemify {
namespace {

bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
         c == ' ';
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, size_t width) {
  size_t len = text::length(s);
  if (len < width) s.append(width - len, ' ');
  return s;
}

}  // namespace

std::string normalize_segment(std::string_view input) {
  std::string s = text::collapse_whitespace(input);
  for (;;) {
    while (!s.empty() && is_trailing_punct(s.back())) s.pop_back();
    if (s.empty() || s.back() != ')') break;
    // Drop the balanced group ending here.
    int depth = 0;
    size_t i = s.size();
    while (i > 0) {
      --i;
      if (s[i] == ')') ++depth;
      if (s[i] == '(' && --depth == 0) break;
    }
    if (depth != 0) break;
    s.erase(i);
  }
  // "…" is three bytes; strip a trailing ellipsis too.
  while (s.size() >= 3 && s.compare(s.size() - 3, 3, "…") == 0) {
    s.erase(s.size() - 3);
    while (!s.empty() && is_trailing_punct(s.back())) s.pop_back();
  }
  return s;
}

bool match_segment(std::string_view pred, std::string_view gold) {
  return normalize_segment(pred) == normalize_segment(gold);
}

double p_and_r(double precision, double recall) {
  double sum = precision + recall;
  return sum > 0 ? 2 * precision * recall / sum : 0;
}

PrfScore prf_from_counts(size_t matched, size_t predicted, size_t gold) {
  PrfScore s;
  s.matched = matched;
  s.predicted = predicted;
  s.gold = gold;
  s.precision_undefined = predicted == 0;
  s.recall_undefined = gold == 0;
  s.precision = predicted ? static_cast<double>(matched) / predicted : 0;
  s.recall = gold ? static_cast<double>(matched) / gold : 0;
  s.p_and_r = p_and_r(s.precision, s.recall);
  return s;
}

PrfScore score_segments(const std::vector<StandoffSegment> &pred,
                        const std::vector<StandoffSegment> &gold,
                        std::optional<SegmentKind> kind) {
  auto selected = [&](const StandoffSegment &s) {
    return s.kind != SegmentKind::kUntyped && (!kind || s.kind == *kind);
  };
  std::vector<const StandoffSegment *> gs;
  for (const auto &g : gold) {
    if (selected(g)) gs.push_back(&g);
  }
  std::vector<bool> used(gs.size(), false);
  size_t predicted = 0, matched = 0;
  for (const auto &p : pred) {
    if (!selected(p)) continue;
    ++predicted;
    for (size_t i = 0; i < gs.size(); ++i) {
      const StandoffSegment &g = *gs[i];
      if (used[i] || g.doc_id != p.doc_id || g.kind != p.kind) continue;
      bool same = !p.text.empty() && !g.text.empty()
                      ? match_segment(p.text, g.text)
                      : p.clauses == g.clauses;
      if (same) {
        used[i] = true;
        ++matched;
        break;
      }
    }
  }
  return prf_from_counts(matched, predicted, gs.size());
}

bool match_couple(const Couple &pred, const Couple &gold) {
  if (pred.chain.size() != gold.chain.size()) return false;
  if (!match_segment(pred.action, gold.action)) return false;
  for (size_t i = 0; i < pred.chain.size(); ++i) {
    if (!match_segment(pred.chain[i], gold.chain[i])) return false;
  }
  return true;
}

size_t common_couples(const std::vector<Couple> &a, const std::vector<Couple> &b) {
  std::vector<bool> used(b.size(), false);
  size_t common = 0;
  for (const Couple &x : a) {
    for (size_t i = 0; i < b.size(); ++i) {
      if (!used[i] && match_couple(x, b[i])) {
        used[i] = true;
        ++common;
        break;
      }
    }
  }
  return common;
}

ScopeScore score_scope(const std::vector<Couple> &pred,
                       const std::vector<Couple> &gold) {
  if (gold.empty()) throw EmptyGoldError();
  ScopeScore s;
  s.common = common_couples(pred, gold);
  s.predicted = pred.size();
  s.gold = gold.size();
  s.accuracy = static_cast<double>(s.common) / gold.size();
  return s;
}

Agreement agreement(const std::vector<Couple> &a, const std::vector<Couple> &b) {
  Agreement out;
  out.common = common_couples(a, b);
  auto ratio = [&](size_t denom, size_t other) {
    if (denom == 0) return other == 0 ? 1.0 : 0.0;
    return static_cast<double>(out.common) / denom;
  };
  out.a_given_b = ratio(b.size(), a.size());
  out.b_given_a = ratio(a.size(), b.size());
  out.mean = (out.a_given_b + out.b_given_a) / 2;
  return out;
}

EvalFileKind detect_eval_file(std::string_view contents) {
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    size_t fields = text::split(line, '\t').size();
    if (fields == 2) return EvalFileKind::kCouples;
    if (fields == 4 || fields == 5) return EvalFileKind::kSegments;
    throw FormatError(line_no, "cannot tell couple file from segment file");
  }
  throw FormatError(0, "empty evaluation file");
}

EvalReport evaluate_files(std::string_view pred, std::string_view gold) {
  EvalReport report;
  bool has_content = false;
  for (std::string_view line : text::split(gold, '\n')) {
    line = text::trim(line);
    has_content = has_content || (!line.empty() && line.front() != '#');
  }
  if (!has_content) throw EmptyGoldError();
  EvalFileKind gold_kind = detect_eval_file(gold);
  EvalFileKind pred_kind = pred.find_first_not_of(" \t\r\n") == std::string_view::npos
                               ? gold_kind
                               : detect_eval_file(pred);
  if (pred_kind != gold_kind) {
    throw FormatError(0, "prediction and gold files are of different kinds");
  }
  if (gold_kind == EvalFileKind::kCouples) {
    auto p = parse_couples(pred);
    auto g = parse_couples(gold);
    report.scope = score_scope(p, g);
    report.agreement = agreement(p, g);
  } else {
    auto p = parse_standoff(pred);
    auto g = parse_standoff(gold);
    for (SegmentKind k : {SegmentKind::kCondition, SegmentKind::kAction,
                          SegmentKind::kExplanation}) {
      report.segments.push_back({std::string(to_string(k)), score_segments(p, g, k)});
    }
    report.segments.push_back({"all", score_segments(p, g)});
  }
  return report;
}

std::string format_report(const EvalReport &report) {
  std::string table, kv;
  if (!report.segments.empty()) {
    table += pad("kind", 12) + pad("pred", 6) + pad("gold", 6) + pad("match", 7) +
             pad("P", 8) + pad("R", 8) + "P&R\n";
    for (const auto &row : report.segments) {
      const PrfScore &s = row.score;
      table += pad(row.kind, 12) + pad(std::to_string(s.predicted), 6) +
               pad(std::to_string(s.gold), 6) + pad(std::to_string(s.matched), 7) +
               pad(fixed(s.precision), 8) + pad(fixed(s.recall), 8) +
               fixed(s.p_and_r) + "\n";
      std::string k = row.kind;
      std::transform(k.begin(), k.end(), k.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      kv += k + ".precision=" + fixed(s.precision) + "\n";
      kv += k + ".recall=" + fixed(s.recall) + "\n";
      kv += k + ".p_and_r=" + fixed(s.p_and_r) + "\n";
      kv += k + ".matched=" + std::to_string(s.matched) + "\n";
      if (s.precision_undefined) kv += k + ".precision_undefined=1\n";
      if (s.recall_undefined) kv += k + ".recall_undefined=1\n";
    }
  }
  if (report.scope) {
    const ScopeScore &s = *report.scope;
    table += pad("metric", 20) + "value\n";
    table += pad("common couples", 20) + std::to_string(s.common) + "\n";
    table += pad("predicted couples", 20) + std::to_string(s.predicted) + "\n";
    table += pad("gold couples", 20) + std::to_string(s.gold) + "\n";
    table += pad("scope accuracy", 20) + fixed(s.accuracy) + "\n";
    kv += "scope.common=" + std::to_string(s.common) + "\n";
    kv += "scope.predicted=" + std::to_string(s.predicted) + "\n";
    kv += "scope.gold=" + std::to_string(s.gold) + "\n";
    kv += "scope.accuracy=" + fixed(s.accuracy) + "\n";
  }
  if (report.agreement) {
    const Agreement &a = *report.agreement;
    table += pad("agreement pred|gold", 20) + fixed(a.a_given_b) + "\n";
    table += pad("agreement gold|pred", 20) + fixed(a.b_given_a) + "\n";
    table += pad("agreement mean", 20) + fixed(a.mean) + "\n";
    kv += "agreement.pred_given_gold=" + fixed(a.a_given_b) + "\n";
    kv += "agreement.gold_given_pred=" + fixed(a.b_given_a) + "\n";
    kv += "agreement.mean=" + fixed(a.mean) + "\n";
  }
  return table + "\n" + kv;
}

}  // namespace gemify

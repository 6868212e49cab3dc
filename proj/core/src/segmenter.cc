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

#include "gemify/segmenter.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gemify/errors.h"

namespace gemify {
namespace {

constexpr std::string_view kKindNames[] = {"Condition", "Action",
                                           "Explanation", "Untyped"};
constexpr SegmentKind kTypedKinds[] = {
    SegmentKind::kCondition, SegmentKind::kAction, SegmentKind::kExplanation};
constexpr CueClass kVerbClasses[] = {CueClass::kInjunctiveVerb,
                                     CueClass::kDeonticModal,
                                     CueClass::kRecommendVerb};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

bool suppressed(const Annotation &a) { return a.has_feature("suppressed", "true"); }

// Whether `ann` can justify typing a clause as `kind`.
bool admissible(const Annotation &ann, SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kCondition:
      return is_condition_cue(ann.cue_class);
    case SegmentKind::kAction:
      return is_verb_cue(ann.cue_class) && !suppressed(ann);
    case SegmentKind::kExplanation:
      return ann.cue_class == CueClass::kJustificationMarker;
    case SegmentKind::kUntyped:
      return false;
  }
  return false;
}

std::vector<int> triggers_for(const std::vector<Annotation> &anns,
                              SegmentKind kind) {
  std::vector<int> out;
  for (const Annotation &a : anns) {
    if (admissible(a, kind)) out.push_back(a.id);
  }
  return out;
}

struct ClauseTyping {
  SegmentKind kind = SegmentKind::kUntyped;
  std::vector<int> triggers;
  int group = -1;  // clauses of one group share their governing trigger
};

}  // namespace

std::string_view to_string(SegmentKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<SegmentKind> parse_segment_kind(std::string_view name) {
  for (size_t i = 0; i < std::size(kKindNames); ++i) {
    if (kKindNames[i] == name) return static_cast<SegmentKind>(i);
  }
  return std::nullopt;
}

bool is_cue_feature(std::string_view f) {
  return starts_with(f, "cue:") || starts_with(f, "init:") ||
         starts_with(f, "sent_init:") || starts_with(f, "suppressed:");
}

std::string Rule::key() const {
  std::string out;
  for (const std::string &f : features) {
    if (!out.empty()) out += '&';
    out += f;
  }
  return out + "=>" + std::string(to_string(kind));
}

bool Rule::sentence_level() const {
  return std::any_of(features.begin(), features.end(),
                     [](const std::string &f) { return starts_with(f, "sent_init:"); });
}

bool Rule::fires(const FeatureSet &clause) const {
  return std::all_of(features.begin(), features.end(),
                     [&](const std::string &f) { return clause.count(f) > 0; });
}

RuleTable default_rule_table() {
  constexpr double kScore = 10;
  RuleTable table;
  for (CueClass c : {CueClass::kConditionConnector, CueClass::kDomainTerm,
                     CueClass::kLocationConnector,
                     CueClass::kTemporalConnector}) {
    table.rules.push_back({{"cue:" + std::string(to_string(c))},
                           SegmentKind::kCondition, kScore});
  }
  for (CueClass c : kVerbClasses) {
    std::string cue = "cue:" + std::string(to_string(c));
    for (std::string_view f : {"mood:imperative", "mood:infinitive",
                               "tense:future", "tense:present"}) {
      std::vector<std::string> conj = {cue, std::string(f)};
      std::sort(conj.begin(), conj.end());
      table.rules.push_back({conj, SegmentKind::kAction, kScore});
    }
  }
  for (CueClass c : {CueClass::kInjunctiveVerb, CueClass::kRecommendVerb}) {
    table.rules.push_back(
        {{"mood:infinitive", "sent_init:" + std::string(to_string(c))},
         SegmentKind::kAction, kScore});
  }
  table.rules.push_back(
      {{"sent_init:JustificationMarker"}, SegmentKind::kExplanation, kScore});
  return table;
}

std::string format_rule_table(const RuleTable &table) {
  std::string out = "#threshold=" + format_double(table.threshold) + "\n";
  for (const Rule &r : table.rules) {
    out += r.key() + "\t" + format_double(r.score) + "\n";
  }
  return out;
}

RuleTable parse_rule_table(std::string_view contents) {
  RuleTable table;
  int line_no = 0;
  auto parse_number = [&](std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw FormatError(line_no, "bad number '" + std::string(s) + "'");
    }
    return v;
  };
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = text::trim(line);
    if (line.empty()) continue;
    if (starts_with(line, "#threshold=")) {
      table.threshold = parse_number(line.substr(11));
      continue;
    }
    if (line.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw FormatError(line_no, "expected rule<TAB>score");
    size_t arrow = fields[0].find("=>");
    if (arrow == std::string_view::npos) throw FormatError(line_no, "missing '=>'");
    Rule rule;
    auto kind = parse_segment_kind(fields[0].substr(arrow + 2));
    if (!kind || *kind == SegmentKind::kUntyped) {
      throw FormatError(line_no, "unknown segment kind");
    }
    rule.kind = *kind;
    for (std::string_view f : text::split(fields[0].substr(0, arrow), '&')) {
      if (f.empty()) throw FormatError(line_no, "empty feature");
      rule.features.emplace_back(f);
    }
    std::sort(rule.features.begin(), rule.features.end());
    rule.score = parse_number(fields[1]);
    if (rule.score < 0) throw FormatError(line_no, "negative score");
    table.rules.push_back(std::move(rule));
  }
  return table;
}

RuleTable load_rule_table(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read rule table " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule_table(buf.str());
}

std::vector<FeatureSet> clause_features(const FactStore &store,
                                        const Document &doc) {
  std::vector<FeatureSet> out(doc.clauses.size());
  for (const Clause &clause : doc.clauses) {
    FeatureSet &fs = out[clause.index];
    switch (clause.in_sentence) {
      case SentencePosition::kInitial: fs.insert("pos:initial"); break;
      case SentencePosition::kMedial: fs.insert("pos:medial"); break;
      case SentencePosition::kFinal: fs.insert("pos:final"); break;
    }
    for (const Annotation &a : store.QueryClause(clause.index)) {
      std::string cls(to_string(a.cue_class));
      if (suppressed(a)) {
        fs.insert("suppressed:" + cls);
        continue;
      }
      fs.insert("cue:" + cls);
      if (a.has_feature("init", "true")) {
        fs.insert("init:" + cls);
        if (clause.in_sentence == SentencePosition::kInitial) {
          fs.insert("sent_init:" + cls);
        }
      }
      if (is_verb_cue(a.cue_class)) {
        if (auto t = a.feature("tense"); !t.empty()) fs.insert("tense:" + t);
        if (auto m = a.feature("mood"); !m.empty()) fs.insert("mood:" + m);
      }
    }
  }
  return out;
}

std::vector<BasicSegment> classify_segments(const FactStore &store,
                                            const Document &doc,
                                            const RuleTable &table) {
  std::vector<FeatureSet> features = clause_features(store, doc);
  std::vector<std::vector<Annotation>> anns(doc.clauses.size());
  for (const Clause &c : doc.clauses) anns[c.index] = store.QueryClause(c.index);

  std::vector<ClauseTyping> typing(doc.clauses.size());
  int next_group = 0;

  // Clause-level rules.
  for (const Clause &clause : doc.clauses) {
    const int i = clause.index;
    double best[3] = {-1, -1, -1};
    for (const Rule &r : table.rules) {
      if (r.score < table.threshold || r.sentence_level()) continue;
      if (r.kind == SegmentKind::kUntyped || !r.fires(features[i])) continue;
      if (triggers_for(anns[i], r.kind).empty()) continue;
      double &b = best[static_cast<int>(r.kind)];
      b = std::max(b, r.score);
    }
    constexpr int kCond = 0, kAct = 1;
    std::optional<SegmentKind> chosen;
    if (best[kCond] >= 0 && best[kAct] >= 0) {
      bool initial_connector =
          std::any_of(anns[i].begin(), anns[i].end(), [](const Annotation &a) {
            return admissible(a, SegmentKind::kCondition) &&
                   a.has_feature("init", "true");
          });
      chosen = initial_connector ? SegmentKind::kCondition : SegmentKind::kAction;
    } else {
      double top = -1;
      for (SegmentKind k : kTypedKinds) {
        if (best[static_cast<int>(k)] > top) {
          top = best[static_cast<int>(k)];
          chosen = k;
        }
      }
    }
    if (chosen) {
      typing[i] = {*chosen, triggers_for(anns[i], *chosen), next_group++};
    }
  }

  // Sentence-level rules, fired by the sentence's first clause.
  for (const Sentence &sentence : doc.sentences) {
    const int first = sentence.clauses.first;
    std::optional<SegmentKind> kind;
    double top = -1;
    for (const Rule &r : table.rules) {
      if (r.score < table.threshold || !r.sentence_level()) continue;
      if (!r.fires(features[first])) continue;
      if (triggers_for(anns[first], r.kind).empty()) continue;
      // Explanation dominates any other sentence-level typing.
      if (!kind || r.kind == SegmentKind::kExplanation ||
          (*kind != SegmentKind::kExplanation && r.score > top)) {
        kind = r.kind;
        top = r.score;
      }
    }
    if (!kind) continue;
    std::vector<int> triggers = triggers_for(anns[first], *kind);
    const int group = next_group++;
    for (int c = sentence.clauses.first; c <= sentence.clauses.last; ++c) {
      if (*kind == SegmentKind::kExplanation ||
          typing[c].kind == SegmentKind::kUntyped) {
        typing[c] = {*kind, triggers, group};
      }
    }
  }

  // Cue-less untyped clauses continue the typed segment before them.
  for (const Sentence &sentence : doc.sentences) {
    for (int c = sentence.clauses.first + 1; c <= sentence.clauses.last; ++c) {
      if (typing[c].kind != SegmentKind::kUntyped) continue;
      if (typing[c - 1].kind == SegmentKind::kUntyped) continue;
      bool discourse = std::any_of(anns[c].begin(), anns[c].end(),
                                   [](const Annotation &a) {
                                     return is_connector_cue(a.cue_class);
                                   });
      if (discourse) continue;
      typing[c].kind = typing[c - 1].kind;
      typing[c].group = typing[c - 1].group;
    }
  }

  std::vector<BasicSegment> out;
  for (const Sentence &sentence : doc.sentences) {
    bool seen_main = false;
    for (int c = sentence.clauses.first; c <= sentence.clauses.last; ++c) {
      const ClauseTyping &t = typing[c];
      bool extend = c > sentence.clauses.first && !out.empty() &&
                    out.back().kind == t.kind &&
                    (t.kind == SegmentKind::kUntyped
                         ? typing[c - 1].kind == SegmentKind::kUntyped
                         : typing[c - 1].group == t.group);
      if (extend) {
        out.back().clauses.last = c;
        for (int id : t.triggers) {
          auto &tr = out.back().triggers;
          if (std::find(tr.begin(), tr.end(), id) == tr.end()) tr.push_back(id);
        }
      } else {
        BasicSegment seg;
        seg.kind = t.kind;
        seg.clauses = {c, c};
        seg.triggers = t.triggers;
        seg.detached = !seen_main;
        out.push_back(std::move(seg));
      }
      if (t.kind == SegmentKind::kAction || t.kind == SegmentKind::kExplanation) {
        seen_main = true;
      }
    }
  }
  for (BasicSegment &seg : out) std::sort(seg.triggers.begin(), seg.triggers.end());
  return out;
}

// ---------------------------------------------------------------------------
// Training

double chi_square(double a, double b, double c, double d) {
  const double denom = (a + b) * (c + d) * (a + c) * (b + d);
  if (denom == 0) return 0;
  const double n = a + b + c + d;
  const double diff = a * d - b * c;
  return n * diff * diff / denom;
}

RuleTable train_from_clauses(const std::vector<LabeledClause> &clauses,
                             double threshold) {
  struct Counts {
    long total = 0;
    long by_kind[3] = {0, 0, 0};
  };
  std::map<std::vector<std::string>, Counts> conj;
  long kind_total[3] = {0, 0, 0};
  const long n = static_cast<long>(clauses.size());

  for (const LabeledClause &lc : clauses) {
    const int label = static_cast<int>(lc.label);
    if (lc.label != SegmentKind::kUntyped) ++kind_total[label];
    std::vector<std::string> fs(lc.features.begin(), lc.features.end());
    // Every subset of size 1..kMaxConjunction, sorted by construction.
    std::vector<std::string> cur;
    auto visit = [&](auto &&self, size_t from) -> void {
      if (!cur.empty()) {
        Counts &cnt = conj[cur];
        ++cnt.total;
        if (lc.label != SegmentKind::kUntyped) ++cnt.by_kind[label];
      }
      if (cur.size() == kMaxConjunction) return;
      for (size_t i = from; i < fs.size(); ++i) {
        cur.push_back(fs[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    visit(visit, 0);
  }

  auto counts_of = [&](const std::vector<std::string> &key, int k) {
    const Counts &cnt = conj.at(key);
    return std::pair<long, long>{cnt.by_kind[k], cnt.total - cnt.by_kind[k]};
  };

  RuleTable table;
  table.threshold = threshold;
  for (const auto &[key, cnt] : conj) {
    if (std::none_of(key.begin(), key.end(),
                     [](const std::string &f) { return is_cue_feature(f); })) {
      continue;
    }
    for (SegmentKind kind : kTypedKinds) {
      const int k = static_cast<int>(kind);
      const long a = cnt.by_kind[k];
      const long b = cnt.total - a;
      const long c = kind_total[k] - a;
      const long d = n - a - b - c;
      if (a * d <= b * c) continue;
      const double score = chi_square(a, b, c, d);
      if (score <= 0 || score < threshold) continue;
      // Redundant if a proper subset covers exactly the same clauses.
      bool redundant = false;
      for (size_t skip = 0; skip < key.size() && key.size() > 1 && !redundant;
           ++skip) {
        std::vector<std::string> sub;
        for (size_t i = 0; i < key.size(); ++i) {
          if (i != skip) sub.push_back(key[i]);
        }
        redundant = counts_of(sub, k) == std::pair<long, long>{a, b};
      }
      if (redundant) continue;
      table.rules.push_back({key, kind, score});
    }
  }
  std::sort(table.rules.begin(), table.rules.end(),
            [](const Rule &x, const Rule &y) {
              if (x.score != y.score) return x.score > y.score;
              return x.key() < y.key();
            });
  return table;
}

std::vector<StandoffSegment> parse_standoff(std::string_view contents) {
  std::vector<StandoffSegment> out;
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 4 && fields.size() != 5) {
      throw FormatError(line_no, "expected doc_id, first, last, kind[, text]");
    }
    StandoffSegment seg;
    seg.doc_id = std::string(fields[0]);
    auto parse_int = [&](std::string_view s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
        throw FormatError(line_no, "bad clause index '" + std::string(s) + "'");
      }
      return v;
    };
    seg.clauses = {parse_int(fields[1]), parse_int(fields[2])};
    if (seg.clauses.empty()) throw FormatError(line_no, "empty clause range");
    auto kind = parse_segment_kind(fields[3]);
    if (!kind) throw FormatError(line_no, "unknown kind '" + std::string(fields[3]) + "'");
    seg.kind = *kind;
    if (fields.size() == 5) seg.text = std::string(fields[4]);
    out.push_back(std::move(seg));
  }
  return out;
}

std::string format_standoff(std::string_view doc_id, const Document &doc,
                            const std::vector<BasicSegment> &segments) {
  std::string out;
  for (const BasicSegment &s : segments) {
    if (s.kind == SegmentKind::kUntyped) continue;
    out += std::string(doc_id) + "\t" + std::to_string(s.clauses.first) + "\t" +
           std::to_string(s.clauses.last) + "\t" +
           std::string(to_string(s.kind)) + "\t" + doc.range_text(s.clauses) +
           "\n";
  }
  return out;
}

std::vector<LabeledClause> label_clauses(
    const std::vector<FeatureSet> &features,
    const std::vector<StandoffSegment> &gold) {
  std::vector<LabeledClause> out;
  out.reserve(features.size());
  for (const FeatureSet &fs : features) out.push_back({fs, SegmentKind::kUntyped});
  for (const StandoffSegment &g : gold) {
    if (g.clauses.last >= static_cast<int>(out.size())) {
      throw FormatError(0, "gold segment beyond document end in " + g.doc_id);
    }
    if (g.kind == SegmentKind::kUntyped) continue;
    for (int c = g.clauses.first; c <= g.clauses.last; ++c) out[c].label = g.kind;
  }
  return out;
}

}  // namespace gemify

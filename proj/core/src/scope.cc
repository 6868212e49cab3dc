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

#include "gemify/scope.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "gemify/cues.h"
#include "gemify/errors.h"

namespace gemify {
namespace {

constexpr std::string_view kOriginNames[] = {"Root", "Heading", "Enum",
                                             "Detached", "Included"};

int block_of_frame(const ScopeTree &tree, const Document &doc, const Frame &f) {
  return doc.clauses[tree.segments[f.conditions.front()].clauses.first].block;
}

int effective_end(const Frame &f) {
  int end = f.scope.last;
  for (const ClauseRange &e : f.extensions) end = std::max(end, e.last);
  return end;
}

// Innermost frame whose main scope holds `clause` (the root at worst).
int innermost(const ScopeTree &tree, int clause) {
  int best = 0;
  for (const Frame &f : tree.frames) {
    if (f.id == 0 || !f.scope.contains(clause)) continue;
    const Frame &b = tree.frames[best];
    int df = tree.depth(f.id), db = tree.depth(best);
    if (best == 0 || df > db || (df == db && f.id > b.id)) best = f.id;
  }
  return best;
}

// Re-derives parents from scopes and clips children to their parents.
// Returns the frames whose scope was clipped, with their previous scope.
std::vector<std::pair<int, ClauseRange>> renest(ScopeTree &tree) {
  std::vector<std::pair<int, ClauseRange>> clipped;
  std::vector<int> stack;
  for (int id : tree.ordered_frames()) {
    Frame &f = tree.frames[id];
    while (!stack.empty() &&
           tree.frames[stack.back()].scope.last < f.scope.first) {
      stack.pop_back();
    }
    f.parent = stack.empty() ? 0 : stack.back();
    const Frame &p = tree.frames[f.parent];
    if (f.scope.last > p.scope.last) {
      clipped.push_back({id, f.scope});
      f.scope.last = p.scope.last;
    }
    stack.push_back(id);
  }
  return clipped;
}

std::string leading_word(const ScopeTree &tree, const Document &doc,
                         const FactStore &store, const Frame &f) {
  const BasicSegment &seg = tree.segments[f.conditions.front()];
  if (seg.triggers.empty()) return "";
  const Annotation *a = store.Find(seg.triggers.front());
  if (!a) return "";
  std::string_view clause = doc.clauses[a->clause_index].text;
  auto tokens = text::tokenize(clause.substr(a->span.begin, a->span.size()));
  return tokens.empty() ? "" : tokens.front().norm;
}

int heading_end(const Document &doc, int block) {
  const int level = doc.blocks[block].level;
  for (size_t b = block + 1; b < doc.blocks.size(); ++b) {
    if (doc.blocks[b].kind == BlockKind::kHeading && doc.blocks[b].level <= level) {
      return doc.block_clauses(static_cast<int>(b)).first - 1;
    }
  }
  return doc.clause_count() - 1;
}

int enumeration_end(const Document &doc, int block) {
  int last = doc.block_clauses(block).last;
  for (size_t b = block + 1;
       b < doc.blocks.size() && doc.blocks[b].kind == BlockKind::kEnumItem; ++b) {
    last = doc.block_clauses(static_cast<int>(b)).last;
  }
  return last;
}

void attach(ScopeTree &tree, const FactStore &store) {
  tree.attachments.assign(tree.segments.size(), {});
  for (size_t i = 0; i < tree.segments.size(); ++i) {
    const BasicSegment &seg = tree.segments[i];
    const int first = seg.clauses.first;
    std::vector<int> &out = tree.attachments[i];
    if (seg.kind == SegmentKind::kAction) {
      for (const Frame &f : tree.frames) {
        if (f.id == 0) continue;
        for (const ClauseRange &e : f.extensions) {
          if (e.contains(first)) {
            out.push_back(f.id);
            break;
          }
        }
      }
      if (out.empty()) out.push_back(innermost(tree, first));
    } else if (seg.kind == SegmentKind::kExplanation) {
      for (auto [cue, frame] : tree.closures) {
        const Annotation *a = store.Find(cue);
        if (a && seg.clauses.contains(a->clause_index)) {
          out.push_back(frame);
          break;
        }
      }
      if (out.empty()) {
        int inner = innermost(tree, first);
        if (inner != 0) out.push_back(inner);
      }
      if (out.empty()) {
        int best = -1;
        for (const Frame &f : tree.frames) {
          if (f.id == 0 || f.scope.last != first - 1) continue;
          if (best < 0 || tree.depth(f.id) > tree.depth(best) ||
              (tree.depth(f.id) == tree.depth(best) && f.id > best)) {
            best = f.id;
          }
        }
        out.push_back(best < 0 ? 0 : best);
      }
    }
  }
}

bool consumed(const ScopeTree &tree, int cue) {
  return std::find(tree.consumed_cues.begin(), tree.consumed_cues.end(), cue) !=
         tree.consumed_cues.end();
}

bool closure_pass(ScopeTree &tree, const FactStore &store, const Document &doc,
                  const RevisionObserver &observer) {
  bool changed = false;
  for (const Sentence &s : doc.sentences) {
    const int c = s.clauses.first;
    for (const Annotation &a : store.QueryClause(c)) {
      if (a.cue_class != CueClass::kJustificationMarker &&
          a.cue_class != CueClass::kContrastMarker) {
        continue;
      }
      if (!a.has_feature("init", "true") || consumed(tree, a.id)) continue;
      int target = -1;
      for (const Frame &f : tree.frames) {
        if (f.origin != FrameOrigin::kDetached &&
            f.origin != FrameOrigin::kIncluded) {
          continue;
        }
        if (!f.scope.contains(c) || f.scope.first >= c) continue;
        if (target < 0 || tree.depth(f.id) > tree.depth(target) ||
            (tree.depth(f.id) == tree.depth(target) && f.id > target)) {
          target = f.id;
        }
      }
      if (target < 0) continue;
      Frame &f = tree.frames[target];
      ClauseRange before = f.scope;
      f.scope.last = c - 1;
      f.revision_log.push_back({a.id, RevisionAction::kClosed, before, f.scope});
      for (auto [id, old] : renest(tree)) {
        Frame &child = tree.frames[id];
        child.revision_log.push_back(
            {a.id, RevisionAction::kClosed, old, child.scope});
      }
      tree.closures.push_back({a.id, target});
      tree.consumed_cues.push_back(a.id);
      changed = true;
      if (observer) observer(tree);
      break;
    }
  }
  return changed;
}

bool extension_pass(ScopeTree &tree, const FactStore &store,
                    const Document &doc, const RevisionObserver &observer) {
  bool changed = false;
  for (size_t si = 0; si < doc.sentences.size(); ++si) {
    const Sentence &s = doc.sentences[si];
    const int c = s.clauses.first;
    for (const Annotation &a : store.QueryClause(c)) {
      if (a.cue_class != CueClass::kAnaphoricExpr) continue;
      if (!a.has_feature("init", "true") || consumed(tree, a.id)) continue;
      const std::string count = a.feature("referent_count", "1");
      const bool all = count == kAllReferents;
      const int parent = innermost(tree, c);
      std::set<int> closed_here;
      for (auto [cue, frame] : tree.closures) {
        const Annotation *m = store.Find(cue);
        if (m && s.clauses.contains(m->clause_index)) closed_here.insert(frame);
      }
      std::vector<int> siblings;
      for (const Frame &f : tree.frames) {
        if (f.id == 0 || f.parent != parent || closed_here.count(f.id)) continue;
        if (effective_end(f) >= c) continue;
        if (all && block_of_frame(tree, doc, f) != s.block) continue;
        siblings.push_back(f.id);
      }
      if (siblings.empty()) continue;
      std::sort(siblings.begin(), siblings.end(), [&](int x, int y) {
        const Frame &fx = tree.frames[x], &fy = tree.frames[y];
        if (effective_end(fx) != effective_end(fy)) {
          return effective_end(fx) > effective_end(fy);
        }
        if (fx.scope.first != fy.scope.first) return fx.scope.first > fy.scope.first;
        return x > y;
      });
      if (effective_end(tree.frames[siblings.front()]) != c - 1) continue;
      size_t wanted = siblings.size();
      if (!all) {
        int n = 1;
        std::from_chars(count.data(), count.data() + count.size(), n);
        wanted = static_cast<size_t>(std::max(n, 0));
        if (wanted > siblings.size()) {
          tree.warnings.push_back("clause " + std::to_string(c) + ": " +
                                  count + " referents requested, " +
                                  std::to_string(siblings.size()) + " available");
          wanted = siblings.size();
        }
      }
      for (size_t k = 0; k < wanted; ++k) {
        Frame &f = tree.frames[siblings[k]];
        ClauseRange before{f.scope.first, effective_end(f)};
        f.extensions.push_back(s.clauses);
        f.revision_log.push_back({a.id, RevisionAction::kExtended, before,
                                  {f.scope.first, s.clauses.last}});
      }
      tree.consumed_cues.push_back(a.id);
      changed = true;
      if (observer) observer(tree);
      break;
    }
  }
  return changed;
}

}  // namespace

std::string_view to_string(FrameOrigin origin) {
  return kOriginNames[static_cast<int>(origin)];
}

bool Frame::covers(int clause) const {
  if (scope.contains(clause)) return true;
  return std::any_of(extensions.begin(), extensions.end(),
                     [&](const ClauseRange &e) { return e.contains(clause); });
}

int ScopeTree::depth(int frame) const {
  int d = 0;
  while (frame > 0) {
    frame = frames[frame].parent;
    ++d;
  }
  return d;
}

std::vector<int> ScopeTree::ordered_frames() const {
  std::vector<int> ids;
  for (size_t i = 1; i < frames.size(); ++i) ids.push_back(static_cast<int>(i));
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const ClauseRange &x = frames[a].scope, &y = frames[b].scope;
    if (x.first != y.first) return x.first < y.first;
    if (x.last != y.last) return x.last > y.last;
    return a < b;
  });
  return ids;
}

ScopeTree apply_default_scopes(std::vector<BasicSegment> segments,
                               const Document &doc, const FactStore &store) {
  ScopeTree tree;
  tree.segments = std::move(segments);
  Frame root;
  root.scope = root.default_scope = doc.all_clauses();
  tree.frames.push_back(root);

  std::vector<std::vector<int>> by_sentence(doc.sentences.size());
  for (size_t i = 0; i < tree.segments.size(); ++i) {
    by_sentence[doc.clauses[tree.segments[i].clauses.first].sentence].push_back(
        static_cast<int>(i));
  }

  for (size_t si = 0; si < doc.sentences.size(); ++si) {
    const Sentence &s = doc.sentences[si];
    const std::vector<int> &segs = by_sentence[si];
    int prefix_open = -1;
    for (size_t k = 0; k < segs.size();) {
      if (tree.segments[segs[k]].kind != SegmentKind::kCondition) {
        ++k;
        continue;
      }
      size_t j = k;
      while (j + 1 < segs.size() &&
             tree.segments[segs[j + 1]].kind == SegmentKind::kCondition) {
        ++j;
      }
      const BasicSegment &first = tree.segments[segs[k]];
      const BasicSegment &last = tree.segments[segs[j]];
      const Block &block = doc.blocks[s.block];
      Frame f;
      f.id = static_cast<int>(tree.frames.size());
      f.conditions.assign(segs.begin() + k, segs.begin() + j + 1);
      const int open = last.clauses.last;
      if (block.kind == BlockKind::kHeading) {
        f.origin = FrameOrigin::kHeading;
        f.scope = {open, heading_end(doc, s.block)};
      } else if (!first.detached) {
        f.origin = FrameOrigin::kIncluded;
        f.scope = {std::max(s.clauses.first, prefix_open), s.clauses.last};
      } else if (block.kind == BlockKind::kEnumHeader) {
        f.origin = FrameOrigin::kEnum;
        f.scope = {open, enumeration_end(doc, s.block)};
      } else {
        f.origin = FrameOrigin::kDetached;
        f.scope = {open, doc.block_clauses(s.block).last};
      }
      if (first.detached) prefix_open = open;

      if (f.origin == FrameOrigin::kDetached) {
        // Parallel contrast: "Chez A ... Chez B ..." in one block.
        std::string word = leading_word(tree, doc, store, f);
        for (Frame &g : tree.frames) {
          if (g.origin != FrameOrigin::kDetached || word.empty()) continue;
          if (block_of_frame(tree, doc, g) != s.block) continue;
          if (!g.scope.contains(open)) continue;
          if (doc.clauses[g.scope.first].sentence >= static_cast<int>(si)) continue;
          if (leading_word(tree, doc, store, g) != word) continue;
          g.scope.last = s.clauses.first - 1;
        }
      }
      tree.frames.push_back(std::move(f));
      k = j + 1;
    }
  }
  renest(tree);
  for (Frame &f : tree.frames) f.default_scope = f.scope;
  attach(tree, store);
  return tree;
}

ScopeTree root_only_tree(std::vector<BasicSegment> segments,
                         const Document &doc, const FactStore &store) {
  ScopeTree tree;
  tree.segments = std::move(segments);
  Frame root;
  root.scope = root.default_scope = doc.all_clauses();
  tree.frames.push_back(root);
  attach(tree, store);
  return tree;
}

ScopeTree revise_scopes(ScopeTree tree, const FactStore &store,
                        const Document &doc, const RevisionObserver &observer) {
  for (;;) {
    bool changed = closure_pass(tree, store, doc, observer);
    changed |= extension_pass(tree, store, doc, observer);
    if (!changed) break;
  }
  attach(tree, store);
  return tree;
}

bool is_laminar(const ScopeTree &tree) {
  for (const Frame &f : tree.frames) {
    if (f.parent >= 0 && !tree.frames[f.parent].scope.contains(f.scope) &&
        !f.scope.empty()) {
      return false;
    }
    for (const Frame &g : tree.frames) {
      if (f.id >= g.id || !f.scope.overlaps(g.scope)) continue;
      if (!f.scope.contains(g.scope) && !g.scope.contains(f.scope)) return false;
    }
  }
  return true;
}

double default_rule_share(const ScopeTree &tree) {
  int total = 0, untouched = 0;
  for (const Frame &f : tree.frames) {
    if (f.origin != FrameOrigin::kDetached && f.origin != FrameOrigin::kIncluded) {
      continue;
    }
    ++total;
    if (f.revision_log.empty()) ++untouched;
  }
  return total == 0 ? 1.0 : static_cast<double>(untouched) / total;
}

std::vector<std::string> condition_chain(const ScopeTree &tree,
                                         const Document &doc, int frame) {
  std::vector<int> path;
  for (int f = frame; f > 0; f = tree.frames[f].parent) path.push_back(f);
  std::vector<std::string> chain;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    for (int seg : tree.frames[*it].conditions) {
      chain.push_back(doc.range_text(tree.segments[seg].clauses));
    }
  }
  return chain;
}

namespace {

std::vector<Couple> flatten(const ScopeTree &tree, const Document &doc,
                            SegmentKind kind) {
  std::vector<Couple> out;
  for (size_t i = 0; i < tree.segments.size(); ++i) {
    if (tree.segments[i].kind != kind) continue;
    std::vector<int> frames = tree.attachments[i];
    std::sort(frames.begin(), frames.end());
    for (int f : frames) {
      out.push_back({condition_chain(tree, doc, f),
                     doc.range_text(tree.segments[i].clauses),
                     static_cast<int>(i), f});
    }
  }
  return out;
}

std::string range_string(ClauseRange r) {
  return "[" + std::to_string(r.first) + ".." + std::to_string(r.last) + "]";
}

void emit_frame(const ScopeTree &tree, const Document &doc, int id, int depth,
                std::string &out) {
  const Frame &f = tree.frames[id];
  std::string indent(2 * depth, ' ');
  std::string conds;
  for (int seg : f.conditions) {
    if (!conds.empty()) conds += kChainSeparator;
    conds += doc.range_text(tree.segments[seg].clauses);
  }
  out += indent + std::string(to_string(f.origin)) + " | " + conds + " | " +
         range_string(f.scope) + "\n";
  indent += "  ";
  for (const ClauseRange &e : f.extensions) {
    out += indent + "extension |  | " + range_string(e) + "\n";
  }
  // Children and attached leaves, in document order.
  std::vector<std::pair<int, std::string>> items;
  for (int child : tree.ordered_frames()) {
    if (tree.frames[child].parent != id) continue;
    std::string sub;
    emit_frame(tree, doc, child, depth + 1, sub);
    items.push_back({tree.frames[child].scope.first, sub});
  }
  for (size_t i = 0; i < tree.segments.size(); ++i) {
    const auto &att = tree.attachments[i];
    if (std::find(att.begin(), att.end(), id) == att.end()) continue;
    const BasicSegment &seg = tree.segments[i];
    std::string kind = seg.kind == SegmentKind::kAction ? "action" : "explanation";
    items.push_back({seg.clauses.first, indent + kind + " | " +
                                            doc.range_text(seg.clauses) + " | " +
                                            range_string(seg.clauses) + "\n"});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  for (const auto &item : items) out += item.second;
}

}  // namespace

std::vector<Couple> flatten_couples(const ScopeTree &tree, const Document &doc) {
  return flatten(tree, doc, SegmentKind::kAction);
}

std::vector<Couple> flatten_explanations(const ScopeTree &tree,
                                         const Document &doc) {
  return flatten(tree, doc, SegmentKind::kExplanation);
}

std::string format_couples(const std::vector<Couple> &couples) {
  std::string out;
  for (const Couple &c : couples) {
    std::string chain;
    for (const std::string &cond : c.chain) {
      if (!chain.empty()) chain += kChainSeparator;
      chain += cond;
    }
    out += chain + "\t" + c.action + "\n";
  }
  return out;
}

std::vector<Couple> parse_couples(std::string_view contents) {
  std::vector<Couple> out;
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw FormatError(line_no, "expected chain<TAB>action");
    if (text::trim(fields[1]).empty()) throw FormatError(line_no, "empty action");
    Couple c;
    std::string_view chain = fields[0];
    while (!chain.empty()) {
      size_t sep = chain.find(kChainSeparator);
      c.chain.emplace_back(chain.substr(0, sep));
      if (sep == std::string_view::npos) break;
      chain.remove_prefix(sep + kChainSeparator.size());
    }
    c.action = std::string(fields[1]);
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_tree(const ScopeTree &tree, const Document &doc) {
  std::string out;
  emit_frame(tree, doc, 0, 0, out);
  return out;
}

std::vector<TreeLine> parse_tree(std::string_view contents) {
  std::vector<TreeLine> out;
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    size_t spaces = line.find_first_not_of(' ');
    if (spaces == std::string_view::npos || spaces % 2 != 0) {
      throw FormatError(line_no, "bad indentation");
    }
    std::string_view body = line.substr(spaces);
    size_t first = body.find(" | ");
    size_t last = body.rfind(" | ");
    if (first == std::string_view::npos || first == last) {
      throw FormatError(line_no, "expected kind | text | [first..last]");
    }
    TreeLine tl;
    tl.depth = static_cast<int>(spaces / 2);
    tl.kind = std::string(body.substr(0, first));
    tl.text = std::string(body.substr(first + 3, last - first - 3));
    std::string_view range = body.substr(last + 3);
    size_t dots = range.find("..");
    if (range.size() < 6 || range.front() != '[' || range.back() != ']' ||
        dots == std::string_view::npos) {
      throw FormatError(line_no, "bad range");
    }
    auto num = [&](std::string_view s) {
      int v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw FormatError(line_no, "bad clause index");
      }
      return v;
    };
    tl.range = {num(range.substr(1, dots - 1)),
                num(range.substr(dots + 2, range.size() - dots - 3))};
    out.push_back(std::move(tl));
  }
  return out;
}

}  // namespace gemify

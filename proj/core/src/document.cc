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

#include "gemify/document.h"

#include <algorithm>
#include <regex>

#include "gemify/errors.h"

namespace gemify {
namespace {

struct Line {
  CharSpan span;  // without the newline (and without a trailing '\r')
  bool blank = false;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    size_t end = nl == std::string_view::npos ? text.size() : nl;
    size_t content_end = end;
    if (content_end > start && text[content_end - 1] == '\r') --content_end;
    std::string_view content = text.substr(start, content_end - start);
    lines.push_back({{start, content_end}, text::trim(content).empty()});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

// Trims whitespace off both ends of a span.
CharSpan trim_span(std::string_view text, CharSpan span) {
  std::string_view s = text.substr(span.begin, span.size());
  std::string_view t = text::trim(s);
  if (t.empty()) return {span.begin, span.begin};
  size_t offset = t.data() - s.data();
  return {span.begin + offset, span.begin + offset + t.size()};
}

bool ends_with_any(std::string_view s,
                   std::initializer_list<std::string_view> suffixes) {
  for (std::string_view suf : suffixes) {
    if (s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf) {
      return true;
    }
  }
  return false;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Length of the enumeration marker at the start of `line` (after
// indentation), including the following whitespace; 0 if none.
size_t enum_marker_length(std::string_view line,
                          const std::vector<std::string> &markers) {
  for (const std::string &marker : markers) {
    size_t n = 0;
    if (!marker.empty() && marker[0] == '#') {
      while (n < line.size() && is_digit(line[n])) ++n;
      if (n == 0) continue;
      std::string_view rest = marker.substr(1);
      if (line.substr(n, rest.size()) != rest) continue;
      n += rest.size();
    } else {
      if (line.substr(0, marker.size()) != marker) continue;
      n = marker.size();
    }
    if (n < line.size() && text::is_space(line, n)) {
      while (n < line.size() && text::is_space(line, n)) ++n;
      return n;
    }
  }
  return 0;
}

size_t indentation(std::string_view line) {
  size_t cols = 0;
  for (char c : line) {
    if (c == ' ') {
      ++cols;
    } else if (c == '\t') {
      cols += 4;
    } else {
      break;
    }
  }
  return cols;
}

// Heading numbering: "2.", "2.1", "2.1.3)", "IV.", "B)". Returns the
// prefix length (with trailing whitespace) and the numbering depth.
std::pair<size_t, int> heading_numbering(std::string_view line) {
  static const std::regex kArabic(R"(^(\d+(?:\.\d+)*)[.)]?\s+)");
  static const std::regex kRoman(R"(^(?:[IVXLC]+|[A-Z])[.)]\s+)");
  std::cmatch m;
  if (std::regex_search(line.begin(), line.end(), m, kArabic)) {
    std::string digits = m[1].str();
    int depth = 1 + static_cast<int>(std::count(digits.begin(), digits.end(), '.'));
    return {static_cast<size_t>(m.length(0)), depth};
  }
  if (std::regex_search(line.begin(), line.end(), m, kRoman)) {
    return {static_cast<size_t>(m.length(0)), 1};
  }
  return {0, 0};
}

bool is_terminal_char(std::string_view s, size_t pos, size_t *len) {
  if (s[pos] == '.' || s[pos] == '!' || s[pos] == '?') {
    *len = 1;
    return true;
  }
  if (s.substr(pos, 3) == "…") {
    *len = 3;
    return true;
  }
  return false;
}

bool is_abbreviation(std::string_view text, CharSpan block, size_t dot,
                     const std::vector<std::string> &abbreviations) {
  size_t start = dot;
  while (start > block.begin && !text::is_space(text, start - 1) &&
         text[start - 1] != '(') {
    --start;
  }
  std::string_view word = text.substr(start, dot + 1 - start);
  if (word.size() < 2) return false;
  std::string norm = text::normalize(word);
  for (const std::string &a : abbreviations) {
    if (a == word || text::normalize(a) == norm) return true;
  }
  return false;
}

struct BlockDraft {
  BlockKind kind;
  int level;
  CharSpan span;     // whole block, trimmed
  CharSpan content;  // without heading numbering or enumeration marker
  int indent = 0;
};

std::vector<BlockDraft> detect_blocks(std::string_view text,
                                      const DocumentOptions &options) {
  std::vector<Line> lines = split_lines(text);
  std::vector<BlockDraft> blocks;
  size_t i = 0;
  while (i < lines.size()) {
    if (lines[i].blank) {
      ++i;
      continue;
    }
    size_t chunk_end = i;
    while (chunk_end < lines.size() && !lines[chunk_end].blank) ++chunk_end;

    bool at_chunk_start = true;
    while (i < chunk_end) {
      std::string_view raw = text.substr(lines[i].span.begin, lines[i].span.size());
      CharSpan line = trim_span(text, lines[i].span);
      std::string_view content = text.substr(line.begin, line.size());
      size_t marker = enum_marker_length(content, options.enum_markers);

      bool bullet = marker > 0 && !is_digit(content[0]);
      bool after_colon =
          !blocks.empty() &&
          ends_with_any(text.substr(blocks.back().span.begin,
                                    blocks.back().span.size()),
                        {":"});
      if (at_chunk_start && !bullet && !after_colon) {
        auto [num_len, depth] = heading_numbering(content);
        bool eligible =
            !ends_with_any(content, {".", "!", "?", "…", ":", ";", ","}) &&
            text::length(content) <= options.heading_max_length;
        bool alone = chunk_end - i == 1;
        if (eligible && (alone || num_len > 0) && num_len < content.size()) {
          BlockDraft b{BlockKind::kHeading, num_len > 0 ? depth : 1, line,
                       trim_span(text, {line.begin + num_len, line.end})};
          blocks.push_back(b);
          ++i;
          continue;
        }
      }
      at_chunk_start = false;

      BlockDraft b;
      if (marker > 0) {
        b.kind = BlockKind::kEnumItem;
        b.indent = static_cast<int>(indentation(raw));
        b.level = 1 + b.indent / 2;
        b.span = line;
        b.content = {line.begin + marker, line.end};
      } else {
        b.kind = BlockKind::kParagraph;
        b.level = 0;
        b.span = line;
        b.content = line;
      }
      ++i;
      while (i < chunk_end) {
        CharSpan next = trim_span(text, lines[i].span);
        std::string_view next_content = text.substr(next.begin, next.size());
        if (enum_marker_length(next_content, options.enum_markers) > 0) break;
        b.span.end = next.end;
        b.content.end = next.end;
        ++i;
      }
      b.content = trim_span(text, b.content);
      blocks.push_back(b);
    }
  }

  // Enumeration items need a header ending with ':' (possibly across a blank
  // line) or a preceding item; orphan items become paragraphs.
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].kind != BlockKind::kEnumItem) continue;
    if (b > 0 && blocks[b - 1].kind == BlockKind::kEnumItem) {
      blocks[b].level = std::clamp(blocks[b].level, 1, blocks[b - 1].level + 1);
      continue;
    }
    if (b > 0 && (blocks[b - 1].kind == BlockKind::kParagraph ||
                  blocks[b - 1].kind == BlockKind::kEnumHeader)) {
      std::string_view prev =
          text.substr(blocks[b - 1].span.begin, blocks[b - 1].span.size());
      if (ends_with_any(prev, {":"})) {
        blocks[b - 1].kind = BlockKind::kEnumHeader;
        blocks[b].level = 1;
        continue;
      }
    }
    blocks[b].kind = BlockKind::kParagraph;
    blocks[b].level = 0;
  }
  return blocks;
}

bool is_clause_trailer(const text::Token &tok) {
  return !tok.word && (tok.norm == "," || tok.norm == ";" || tok.norm == ":" ||
                       tok.norm == "." || tok.norm == "!" || tok.norm == "?" ||
                       tok.norm == "…");
}

}  // namespace

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::kHeading:
      return "Heading";
    case BlockKind::kParagraph:
      return "Paragraph";
    case BlockKind::kEnumHeader:
      return "EnumHeader";
    case BlockKind::kEnumItem:
      return "EnumItem";
  }
  return "?";
}

ClauseRange Document::block_clauses(int block) const {
  const Block &b = blocks[block];
  if (b.sentence_count == 0) return {};
  return {sentences[b.first_sentence].clauses.first,
          sentences[b.last_sentence()].clauses.last};
}

std::string Document::range_text(ClauseRange range) const {
  if (range.empty()) return "";
  std::string out = clauses[range.first].text;
  for (int c = range.first + 1; c <= range.last; ++c) {
    out += separators[c];
    out += clauses[c].text;
  }
  return text::collapse_whitespace(out);
}

std::string Document::reconstruct() const {
  std::string out;
  for (size_t c = 0; c < clauses.size(); ++c) {
    out += separators[c];
    out += clauses[c].text;
  }
  if (!separators.empty()) out += separators.back();
  return out;
}

DocumentOptions default_document_options(const LexiconPack &pack) {
  DocumentOptions options;
  options.abbreviations = pack.abbreviations;
  return options;
}

std::vector<CharSpan> split_sentences(
    std::string_view text, CharSpan block,
    const std::vector<std::string> &abbreviations) {
  std::vector<CharSpan> out;
  size_t start = block.begin;
  int depth = 0;
  size_t pos = block.begin;
  while (pos < block.end) {
    char c = text[pos];
    if (c == '(' || c == '[') {
      ++depth;
      ++pos;
      continue;
    }
    if ((c == ')' || c == ']') && depth > 0) {
      --depth;
      ++pos;
      continue;
    }
    size_t len;
    if (depth == 0 && is_terminal_char(text, pos, &len)) {
      bool abbrev = c == '.' && is_abbreviation(text, block, pos, abbreviations);
      size_t end = pos + len;
      while (end < block.end && is_terminal_char(text, end, &len)) end += len;
      while (end < block.end && (text[end] == '"' || text.substr(end, 2) == "»")) {
        end += text[end] == '"' ? 1 : 2;
      }
      if (!abbrev && (end >= block.end || text::is_space(text, end))) {
        CharSpan s = trim_span(text, {start, end});
        if (!s.empty()) out.push_back(s);
        start = end;
      }
      pos = end;
      continue;
    }
    ++pos;
  }
  CharSpan rest = trim_span(text, {start, block.end});
  if (!rest.empty()) out.push_back(rest);
  return out;
}

std::vector<CharSpan> split_clauses(std::string_view text, CharSpan sentence,
                                    const LexiconPack &pack) {
  std::string_view s = text.substr(sentence.begin, sentence.size());
  std::vector<text::Token> tokens = text::tokenize(s);
  size_t n = tokens.size();
  if (n == 0) return {};

  // Connector starts, and which of them open conditions.
  std::vector<bool> connector_at(n, false), condition_at(n, false);
  auto matches = match_all(pack.cues, pack.inflections, pack.numbers, tokens,
                           [](const LexiconEntry &e) {
                             return is_connector_cue(e.cue_class);
                           });
  for (const Match &m : matches) {
    connector_at[m.first_token] = true;
    CueClass cls = pack.cues.entries()[m.entry].cue_class;
    if (cls == CueClass::kConditionConnector ||
        cls == CueClass::kTemporalConnector) {
      condition_at[m.first_token] = true;
    }
  }

  std::vector<int> depth(n, 0);
  int d = 0;
  for (size_t t = 0; t < n; ++t) {
    if (tokens[t].norm == "(" || tokens[t].norm == "[") {
      depth[t] = d++;
    } else if ((tokens[t].norm == ")" || tokens[t].norm == "]") && d > 0) {
      depth[t] = --d;
    } else {
      depth[t] = d;
    }
  }

  auto is_coordinator = [&](size_t t) {
    return tokens[t].norm == "et" || tokens[t].norm == "ou";
  };
  // A range "starts with a connector" after skipping coordinators and focus
  // adverbs ("et notamment chez ...").
  auto starts_with_connector = [&](size_t begin, size_t end) {
    size_t t = begin;
    while (t < end) {
      const std::string &w = tokens[t].norm;
      if (w == "et" || w == "ou" || w == "mais" || w == "notamment" ||
          w == "surtout" || w == "particulièrement") {
        ++t;
      } else if (w == "en" && t + 1 < end && tokens[t + 1].norm == "particulier") {
        t += 2;
      } else {
        break;
      }
    }
    return t < end && connector_at[t];
  };
  auto has_finite = [&](size_t begin, size_t end) {
    for (size_t t = begin; t < end; ++t) {
      if (tokens[t].word && pack.inflections.IsFiniteVerb(tokens[t].norm)) {
        return true;
      }
    }
    return false;
  };
  auto has_content = [&](size_t begin, size_t end) {
    for (size_t t = begin; t < end; ++t) {
      if (!is_clause_trailer(tokens[t])) return true;
    }
    return false;
  };
  auto is_boundary_candidate = [&](size_t t) {
    return depth[t] == 0 && (tokens[t].norm == "," || is_coordinator(t));
  };
  auto next_candidate = [&](size_t from) {
    size_t t = from;
    while (t < n && !is_boundary_candidate(t)) ++t;
    return t;
  };

  std::vector<std::pair<size_t, size_t>> ranges;  // token [begin, end)
  size_t cur = 0;
  for (size_t t = 0; t < n; ++t) {
    if (depth[t] != 0) continue;
    if (tokens[t].norm == ",") {
      size_t after_end = next_candidate(t + 1);
      while (after_end < n && tokens[after_end].norm != ",") {
        after_end = next_candidate(after_end + 1);
      }
      if (has_content(cur, t) && has_content(t + 1, n) &&
          (starts_with_connector(cur, t) || starts_with_connector(t + 1, after_end))) {
        ranges.push_back({cur, t});
        cur = t + 1;
      }
      continue;
    }
    if (t == cur || !tokens[t].word) continue;
    if (is_coordinator(t)) {
      size_t right_end = next_candidate(t + 1);
      if (has_content(cur, t) && has_finite(cur, t) &&
          has_finite(t + 1, right_end)) {
        ranges.push_back({cur, t});
        cur = t;
      }
      continue;
    }
    if (condition_at[t] && tokens[t - 1].norm != "," && has_content(cur, t) &&
        has_finite(cur, t)) {
      ranges.push_back({cur, t});
      cur = t;
    }
  }
  ranges.push_back({cur, n});

  std::vector<CharSpan> out;
  for (auto [b, e] : ranges) {
    while (e > b && is_clause_trailer(tokens[e - 1])) --e;
    if (e <= b) continue;
    out.push_back({sentence.begin + tokens[b].span.begin,
                   sentence.begin + tokens[e - 1].span.end});
  }
  return out;
}

Document parse_document(std::string_view text, const LexiconPack &pack,
                        const DocumentOptions &options, std::string source_id) {
  if (auto bad = text::find_invalid_utf8(text)) {
    throw IngestError("malformed UTF-8", *bad);
  }
  Document doc;
  doc.source_id = std::move(source_id);
  doc.text = std::string(text);

  std::vector<CharSpan> clause_spans;
  for (const BlockDraft &draft : detect_blocks(text, options)) {
    Block block;
    block.kind = draft.kind;
    block.level = draft.level;
    block.span = draft.span;
    block.first_sentence = static_cast<int>(doc.sentences.size());
    int block_index = static_cast<int>(doc.blocks.size());

    std::vector<CharSpan> sentence_spans;
    if (draft.kind == BlockKind::kHeading) {
      sentence_spans.push_back(draft.content);
    } else {
      sentence_spans = split_sentences(text, draft.content, options.abbreviations);
    }
    for (const CharSpan &ss : sentence_spans) {
      std::vector<CharSpan> cs;
      if (draft.kind == BlockKind::kHeading) {
        cs.push_back(ss);
      } else {
        cs = split_clauses(text, ss, pack);
      }
      if (cs.empty()) continue;
      Sentence sentence;
      sentence.span = ss;
      sentence.block = block_index;
      std::string_view st = text.substr(ss.begin, ss.size());
      for (std::string_view term : {"…", ".", "!", "?"}) {
        size_t p = st.find_last_not_of(" \"»");
        if (p == std::string_view::npos) break;
        std::string_view body = st.substr(0, p + 1);
        if (body.size() >= term.size() &&
            body.substr(body.size() - term.size()) == term) {
          sentence.terminal = std::string(term);
          break;
        }
      }
      int sentence_index = static_cast<int>(doc.sentences.size());
      int first = static_cast<int>(clause_spans.size());
      for (size_t k = 0; k < cs.size(); ++k) {
        Clause clause;
        clause.index = static_cast<int>(clause_spans.size());
        clause.span = cs[k];
        clause.text = std::string(text.substr(cs[k].begin, cs[k].size()));
        clause.sentence = sentence_index;
        clause.block = block_index;
        if (k == 0) {
          clause.in_sentence = SentencePosition::kInitial;
        } else if (k + 1 == cs.size()) {
          clause.in_sentence = SentencePosition::kFinal;
        } else {
          clause.in_sentence = SentencePosition::kMedial;
        }
        bool first_sentence = sentence_index == block.first_sentence;
        bool paragraph_like = block.kind == BlockKind::kParagraph ||
                              block.kind == BlockKind::kEnumHeader;
        clause.in_paragraph = (k == 0 && first_sentence && paragraph_like)
                                  ? ParagraphPosition::kInitial
                                  : ParagraphPosition::kNonInitial;
        doc.clauses.push_back(std::move(clause));
        clause_spans.push_back(cs[k]);
      }
      sentence.clauses = {first, static_cast<int>(clause_spans.size()) - 1};
      doc.sentences.push_back(std::move(sentence));
    }
    block.sentence_count =
        static_cast<int>(doc.sentences.size()) - block.first_sentence;
    if (block.sentence_count == 0) continue;
    doc.blocks.push_back(block);
  }

  // Blocks dropped for lack of content shift indices; renumber.
  for (size_t b = 0; b < doc.blocks.size(); ++b) {
    for (int s = doc.blocks[b].first_sentence; s <= doc.blocks[b].last_sentence(); ++s) {
      doc.sentences[s].block = static_cast<int>(b);
      for (int c = doc.sentences[s].clauses.first; c <= doc.sentences[s].clauses.last; ++c) {
        doc.clauses[c].block = static_cast<int>(b);
      }
    }
  }

  size_t prev = 0;
  for (const CharSpan &span : clause_spans) {
    doc.separators.emplace_back(text.substr(prev, span.begin - prev));
    prev = span.end;
  }
  doc.separators.emplace_back(text.substr(prev));
  return doc;
}

}  // namespace gemify

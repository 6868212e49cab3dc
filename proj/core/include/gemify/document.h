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

#ifndef GEMIFY_DOCUMENT_H_
#define GEMIFY_DOCUMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "gemify/lexicon.h"
#include "gemify/text.h"

namespace gemify {

// Inclusive clause index range. An empty range has last < first.
struct ClauseRange {
  int first = 0;
  int last = -1;

  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int clause) const { return first <= clause && clause <= last; }
  bool contains(const ClauseRange &r) const {
    return !r.empty() && first <= r.first && r.last <= last;
  }
  bool overlaps(const ClauseRange &r) const {
    return !empty() && !r.empty() && first <= r.last && r.first <= last;
  }
  friend bool operator==(const ClauseRange &, const ClauseRange &) = default;
  friend auto operator<=>(const ClauseRange &, const ClauseRange &) = default;
};

enum class BlockKind { kHeading, kParagraph, kEnumHeader, kEnumItem };
enum class SentencePosition { kInitial, kMedial, kFinal };
enum class ParagraphPosition { kInitial, kNonInitial };

std::string_view to_string(BlockKind kind);

struct Clause {
  int index = 0;
  std::string text;
  CharSpan span;
  SentencePosition in_sentence = SentencePosition::kInitial;
  ParagraphPosition in_paragraph = ParagraphPosition::kNonInitial;
  int sentence = 0;
  int block = 0;
};

struct Sentence {
  ClauseRange clauses;
  std::string terminal;  // ".", "!", "?", "…" or empty
  CharSpan span;
  int block = 0;
};

struct Block {
  BlockKind kind = BlockKind::kParagraph;
  int level = 0;  // heading level or enumeration depth, else 0
  CharSpan span;
  int first_sentence = 0;
  int sentence_count = 0;

  int last_sentence() const { return first_sentence + sentence_count - 1; }
};

// Hierarchical view of a guideline. Clause indices are global, contiguous
// and in text order; every later stage anchors its facts on them.
struct Document {
  std::string source_id;
  std::string text;
  std::vector<Block> blocks;
  std::vector<Sentence> sentences;
  std::vector<Clause> clauses;
  // separators[i] precedes clause i; separators.back() trails the last one.
  std::vector<std::string> separators;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  ClauseRange all_clauses() const { return {0, clause_count() - 1}; }
  ClauseRange block_clauses(int block) const;
  const Block &block_of(int clause) const {
    return blocks[clauses[clause].block];
  }
  const Sentence &sentence_of(int clause) const {
    return sentences[clauses[clause].sentence];
  }
  // Whitespace-collapsed text of a clause range (with inner separators).
  std::string range_text(ClauseRange range) const;
  // Inverse of parsing: separators and clause texts interleaved.
  std::string reconstruct() const;
};

struct DocumentOptions {
  std::vector<std::string> abbreviations;
  size_t heading_max_length = 120;
  // "#" stands for a run of digits.
  std::vector<std::string> enum_markers = {"-", "–", "•", "*", "#)", "#."};
};

// Options populated from a lexicon pack's abbreviation list.
DocumentOptions default_document_options(const LexiconPack &pack);

// Throws IngestError on malformed UTF-8.
Document parse_document(std::string_view text, const LexiconPack &pack,
                        const DocumentOptions &options,
                        std::string source_id = "");

// Sentence content spans inside `block` (terminal punctuation included,
// surrounding whitespace excluded).
std::vector<CharSpan> split_sentences(
    std::string_view text, CharSpan block,
    const std::vector<std::string> &abbreviations);

// Clause content spans inside `sentence`. Splits at commas next to a
// connector match, before "et"/"ou" joining two finite verb groups and
// before a mid-sentence condition or temporal connector that follows a
// finite main clause. Trailing punctuation is left to the separators.
std::vector<CharSpan> split_clauses(std::string_view text, CharSpan sentence,
                                    const LexiconPack &pack);

}  // namespace gemify

#endif  // GEMIFY_DOCUMENT_H_

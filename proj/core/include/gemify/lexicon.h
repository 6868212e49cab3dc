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

#ifndef GEMIFY_LEXICON_H_
#define GEMIFY_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gemify/text.h"

namespace gemify {

// Closed set of cue classes. Serialized names are stable.
enum class CueClass {
  kConditionConnector,
  kLocationConnector,
  kTemporalConnector,
  kInjunctiveVerb,
  kDeonticModal,
  kRecommendVerb,
  kAnaphoricExpr,
  kContrastMarker,
  kJustificationMarker,
  kDomainTerm,
  kNegationMarker,
};

inline constexpr CueClass kAllCueClasses[] = {
    CueClass::kConditionConnector, CueClass::kLocationConnector,
    CueClass::kTemporalConnector,  CueClass::kInjunctiveVerb,
    CueClass::kDeonticModal,       CueClass::kRecommendVerb,
    CueClass::kAnaphoricExpr,      CueClass::kContrastMarker,
    CueClass::kJustificationMarker, CueClass::kDomainTerm,
    CueClass::kNegationMarker,
};

std::string_view to_string(CueClass c);
std::optional<CueClass> parse_cue_class(std::string_view name);

// Classes that open a condition frame.
bool is_condition_cue(CueClass c);
// Verb-like classes that can make a segment an action.
bool is_verb_cue(CueClass c);
// Classes used by the clause splitter as connectors.
bool is_connector_cue(CueClass c);

enum class Tense { kPresent, kFuture, kPast, kNone };
enum class Mood {
  kIndicative,
  kImperative,
  kConditional,
  kInfinitive,
  kParticiple,
  kNone,
};

std::string_view to_string(Tense t);
std::string_view to_string(Mood m);
std::optional<Tense> parse_tense(std::string_view s);
std::optional<Mood> parse_mood(std::string_view s);

struct Analysis {
  std::string lemma;
  std::string pos;  // VERB, AUX or ADJ
  Tense tense = Tense::kNone;
  Mood mood = Mood::kNone;

  bool verbal() const { return pos == "VERB" || pos == "AUX"; }
  bool finite() const {
    return verbal() && (mood == Mood::kIndicative ||
                        mood == Mood::kImperative ||
                        mood == Mood::kConditional);
  }
};

// Per-lemma form table standing in for a morphological analyzer. Only
// lexicon verbs, auxiliaries and a few adjectives are listed.
class InflectionTable {
 public:
  static InflectionTable Load(const std::filesystem::path &file);
  static InflectionTable Parse(std::string_view contents,
                               const std::string &name = "<inflections>");

  void Add(std::string form, Analysis analysis);

  // All analyses of a normalized form, in file order.
  std::span<const Analysis> Lookup(std::string_view form) const;
  bool HasForm(std::string_view form, std::string_view lemma) const;
  bool HasLemma(std::string_view lemma) const;
  bool IsFiniteVerb(std::string_view form) const;
  bool IsAuxiliary(std::string_view form) const;

  size_t size() const { return size_; }

 private:
  std::unordered_map<std::string, std::vector<Analysis>> forms_;
  std::unordered_map<std::string, bool> lemmas_;
  size_t size_ = 0;
};

// One element of a word pattern.
struct PatternToken {
  enum class Kind { kLiteral, kLemma, kNumber };
  Kind kind = Kind::kLiteral;
  std::vector<std::string> alternatives;  // kLiteral
  std::string lemma;                      // kLemma
  bool optional = false;

  friend bool operator==(const PatternToken &, const PatternToken &) = default;
};

// Parses "en cas de|d'", "<être> pas? <systématique>", "dans les <#> cas".
// Returns std::nullopt and fills *error on a syntax error.
std::optional<std::vector<PatternToken>> parse_pattern(std::string_view pattern,
                                                       std::string *error);

// Closed set of attribute keys allowed in lexicon files.
inline constexpr std::string_view kLexiconAttrKeys[] = {"polarity", "injunctive",
                                                        "referents"};

struct LexiconEntry {
  std::string pattern;
  std::vector<PatternToken> tokens;
  CueClass cue_class = CueClass::kConditionConnector;
  std::map<std::string, std::string> attrs;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string language) : language_(std::move(language)) {}

  // Reads a TSV lexicon: pattern<TAB>cue_class<TAB>attr=val;attr=val.
  // Lemma slots are validated against `inflections`. Throws LexiconError.
  void LoadFile(const std::filesystem::path &file,
                const InflectionTable &inflections);
  void Parse(std::string_view contents, const std::string &name,
             const InflectionTable &inflections);

  // Throws LexiconError on a duplicate (pattern, cue_class).
  void Add(LexiconEntry entry, const std::string &source = "<api>",
           int line = 0);

  const std::vector<LexiconEntry> &entries() const { return entries_; }
  const std::string &language() const { return language_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::string language_;
  std::vector<LexiconEntry> entries_;
};

// Number words used by numeral slots.
using NumberWords = std::map<std::string, int, std::less<>>;

// A lexicon pack as shipped on disk (data/lexicons/<lang>/).
struct LexiconPack {
  std::string language;
  Lexicon cues;    // connectors, markers, verbs, anaphora
  Lexicon domain;  // pathology / domain terms for headings
  InflectionTable inflections;
  NumberWords numbers;
  std::vector<std::string> abbreviations;

  // Loads every *.tsv in `dir`. inflections.tsv, numbers.tsv and domain.tsv
  // are special; abbreviations.txt is optional.
  static LexiconPack Load(const std::filesystem::path &dir);
};

// The pack directory shipped with the library: $GEMIFY_LEXICONS if set,
// else the build tree or the install prefix.
std::filesystem::path default_lexicon_dir();
std::filesystem::path default_data_dir();

// A pattern match over a token sequence.
struct Match {
  size_t entry = 0;        // index into Lexicon::entries()
  size_t first_token = 0;  // inclusive
  size_t end_token = 0;    // exclusive
  CharSpan span;           // byte span relative to the tokenized text
  std::optional<int> number;
  std::optional<size_t> head_token;  // first verbal token, if any
};

// Finds every match of every entry accepted by `filter` at every token
// position (all lengths are reported; longest-match selection is separate).
template <typename Filter>
std::vector<Match> match_all(const Lexicon &lexicon,
                             const InflectionTable &inflections,
                             const NumberWords &numbers,
                             std::span<const text::Token> tokens,
                             Filter filter);

std::vector<Match> match_entry(const LexiconEntry &entry, size_t entry_index,
                               const InflectionTable &inflections,
                               const NumberWords &numbers,
                               std::span<const text::Token> tokens,
                               size_t start);

template <typename Filter>
std::vector<Match> match_all(const Lexicon &lexicon,
                             const InflectionTable &inflections,
                             const NumberWords &numbers,
                             std::span<const text::Token> tokens,
                             Filter filter) {
  std::vector<Match> out;
  const auto &entries = lexicon.entries();
  for (size_t e = 0; e < entries.size(); ++e) {
    if (!filter(entries[e])) continue;
    for (size_t start = 0; start < tokens.size(); ++start) {
      auto found = match_entry(entries[e], e, inflections, numbers, tokens,
                               start);
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

// Greedy longest-match-wins selection among matches of the same class.
// Matches of different classes may overlap. Result is sorted by span.
std::vector<Match> select_longest(const Lexicon &lexicon,
                                  std::vector<Match> matches);

}  // namespace gemify

#endif  // GEMIFY_LEXICON_H_

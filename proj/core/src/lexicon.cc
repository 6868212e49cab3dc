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

#include "gemify/lexicon.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gemify/errors.h"

namespace gemify {
namespace {

constexpr std::string_view kCueNames[] = {
    "ConditionConnector", "LocationConnector", "TemporalConnector",
    "InjunctiveVerb",     "DeonticModal",      "RecommendVerb",
    "AnaphoricExpr",      "ContrastMarker",    "JustificationMarker",
    "DomainTerm",         "NegationMarker",
};

constexpr std::string_view kTenseNames[] = {"present", "future", "past",
                                            "none"};
constexpr std::string_view kMoodNames[] = {
    "indicative", "imperative", "conditional", "infinitive", "participle", "-"};

std::string read_file(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LexiconError(file.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Iterates non-blank, non-comment lines with 1-based line numbers.
template <typename Fn>
void for_each_line(std::string_view contents, Fn fn) {
  int number = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    fn(number, line);
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

bool token_matches(const PatternToken &pt, const text::Token &tok,
                   const InflectionTable &inflections,
                   const NumberWords &numbers, std::optional<int> *number) {
  if (!tok.word) {
    return pt.kind == PatternToken::Kind::kLiteral &&
           std::find(pt.alternatives.begin(), pt.alternatives.end(),
                     tok.norm) != pt.alternatives.end();
  }
  switch (pt.kind) {
    case PatternToken::Kind::kLiteral:
      return std::find(pt.alternatives.begin(), pt.alternatives.end(),
                       tok.norm) != pt.alternatives.end();
    case PatternToken::Kind::kLemma:
      return inflections.HasForm(tok.norm, pt.lemma);
    case PatternToken::Kind::kNumber: {
      if (all_digits(tok.norm) && tok.norm.size() < 6) {
        *number = std::stoi(tok.norm);
        return true;
      }
      auto it = numbers.find(tok.norm);
      if (it == numbers.end()) return false;
      *number = it->second;
      return true;
    }
  }
  return false;
}

struct PartialMatch {
  size_t end;
  std::optional<int> number;
};

void match_from(const std::vector<PatternToken> &pattern, size_t p,
                std::span<const text::Token> tokens, size_t t,
                const InflectionTable &inflections, const NumberWords &numbers,
                std::optional<int> number, std::vector<PartialMatch> *out) {
  if (p == pattern.size()) {
    out->push_back({t, number});
    return;
  }
  const PatternToken &pt = pattern[p];
  if (pt.optional) {
    match_from(pattern, p + 1, tokens, t, inflections, numbers, number, out);
  }
  if (t < tokens.size()) {
    std::optional<int> n = number;
    if (token_matches(pt, tokens[t], inflections, numbers, &n)) {
      match_from(pattern, p + 1, tokens, t + 1, inflections, numbers, n, out);
    }
  }
}

}  // namespace

std::string_view to_string(CueClass c) {
  return kCueNames[static_cast<int>(c)];
}

std::optional<CueClass> parse_cue_class(std::string_view name) {
  for (size_t i = 0; i < std::size(kCueNames); ++i) {
    if (kCueNames[i] == name) return static_cast<CueClass>(i);
  }
  return std::nullopt;
}

bool is_condition_cue(CueClass c) {
  return c == CueClass::kConditionConnector ||
         c == CueClass::kLocationConnector ||
         c == CueClass::kTemporalConnector || c == CueClass::kDomainTerm;
}

bool is_verb_cue(CueClass c) {
  return c == CueClass::kInjunctiveVerb || c == CueClass::kDeonticModal ||
         c == CueClass::kRecommendVerb;
}

bool is_connector_cue(CueClass c) {
  return c == CueClass::kConditionConnector ||
         c == CueClass::kLocationConnector ||
         c == CueClass::kTemporalConnector || c == CueClass::kAnaphoricExpr ||
         c == CueClass::kContrastMarker ||
         c == CueClass::kJustificationMarker;
}

std::string_view to_string(Tense t) { return kTenseNames[static_cast<int>(t)]; }
std::string_view to_string(Mood m) { return kMoodNames[static_cast<int>(m)]; }

std::optional<Tense> parse_tense(std::string_view s) {
  for (size_t i = 0; i < std::size(kTenseNames); ++i) {
    if (kTenseNames[i] == s) return static_cast<Tense>(i);
  }
  return std::nullopt;
}

std::optional<Mood> parse_mood(std::string_view s) {
  if (s == "none") return Mood::kNone;
  for (size_t i = 0; i < std::size(kMoodNames); ++i) {
    if (kMoodNames[i] == s) return static_cast<Mood>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// InflectionTable

InflectionTable InflectionTable::Load(const std::filesystem::path &file) {
  return Parse(read_file(file), file.string());
}

InflectionTable InflectionTable::Parse(std::string_view contents,
                                       const std::string &name) {
  InflectionTable table;
  for_each_line(contents, [&](int line, std::string_view row) {
    auto fields = text::split(row, '\t');
    if (fields.size() != 5) {
      throw LexiconError(name, line, "expected 5 tab-separated fields");
    }
    auto tense = parse_tense(fields[3]);
    auto mood = parse_mood(fields[4]);
    if (!tense) throw LexiconError(name, line, "unknown tense");
    if (!mood) throw LexiconError(name, line, "unknown mood");
    std::string pos(fields[2]);
    if (pos != "VERB" && pos != "AUX" && pos != "ADJ") {
      throw LexiconError(name, line, "unknown part of speech " + pos);
    }
    table.Add(text::normalize(fields[0]),
              {text::normalize(fields[1]), pos, *tense, *mood});
  });
  return table;
}

void InflectionTable::Add(std::string form, Analysis analysis) {
  lemmas_[analysis.lemma] = true;
  forms_[std::move(form)].push_back(std::move(analysis));
  ++size_;
}

std::span<const Analysis> InflectionTable::Lookup(std::string_view form) const {
  auto it = forms_.find(std::string(form));
  if (it == forms_.end()) return {};
  return it->second;
}

bool InflectionTable::HasForm(std::string_view form,
                              std::string_view lemma) const {
  for (const Analysis &a : Lookup(form)) {
    if (a.lemma == lemma) return true;
  }
  return false;
}

bool InflectionTable::HasLemma(std::string_view lemma) const {
  return lemmas_.count(std::string(lemma)) > 0;
}

bool InflectionTable::IsFiniteVerb(std::string_view form) const {
  for (const Analysis &a : Lookup(form)) {
    if (a.finite()) return true;
  }
  return false;
}

bool InflectionTable::IsAuxiliary(std::string_view form) const {
  for (const Analysis &a : Lookup(form)) {
    if (a.pos == "AUX") return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Patterns

std::optional<std::vector<PatternToken>> parse_pattern(std::string_view pattern,
                                                       std::string *error) {
  std::vector<PatternToken> tokens;
  bool required = false;
  for (std::string_view piece : text::split(pattern, ' ')) {
    if (piece.empty()) continue;
    PatternToken pt;
    if (piece.size() > 1 && piece.back() == '?') {
      pt.optional = true;
      piece.remove_suffix(1);
    }
    if (piece == "<#>") {
      pt.kind = PatternToken::Kind::kNumber;
    } else if (piece.front() == '<') {
      if (piece.size() < 3 || piece.back() != '>') {
        *error = "unterminated slot '" + std::string(piece) + "'";
        return std::nullopt;
      }
      pt.kind = PatternToken::Kind::kLemma;
      pt.lemma = std::string(piece.substr(1, piece.size() - 2));
    } else {
      for (std::string_view alt : text::split(piece, '|')) {
        if (alt.empty()) {
          *error = "empty alternative in '" + std::string(piece) + "'";
          return std::nullopt;
        }
        pt.alternatives.emplace_back(alt);
      }
    }
    required |= !pt.optional;
    tokens.push_back(std::move(pt));
  }
  if (tokens.empty()) {
    *error = "empty pattern";
    return std::nullopt;
  }
  if (!required) {
    *error = "pattern has no required token";
    return std::nullopt;
  }
  return tokens;
}

std::vector<Match> match_entry(const LexiconEntry &entry, size_t entry_index,
                               const InflectionTable &inflections,
                               const NumberWords &numbers,
                               std::span<const text::Token> tokens,
                               size_t start) {
  std::vector<PartialMatch> partial;
  match_from(entry.tokens, 0, tokens, start, inflections, numbers,
             std::nullopt, &partial);
  std::vector<Match> out;
  for (const PartialMatch &pm : partial) {
    if (pm.end == start) continue;
    bool dup = std::any_of(out.begin(), out.end(), [&](const Match &m) {
      return m.end_token == pm.end;
    });
    if (dup) continue;
    Match m;
    m.entry = entry_index;
    m.first_token = start;
    m.end_token = pm.end;
    m.span = {tokens[start].span.begin, tokens[pm.end - 1].span.end};
    m.number = pm.number;
    for (size_t t = start; t < pm.end; ++t) {
      bool verbal = false;
      for (const Analysis &a : inflections.Lookup(tokens[t].norm)) {
        verbal |= a.verbal();
      }
      if (verbal) {
        m.head_token = t;
        break;
      }
    }
    out.push_back(m);
  }
  return out;
}

std::vector<Match> select_longest(const Lexicon &lexicon,
                                  std::vector<Match> matches) {
  const auto &entries = lexicon.entries();
  std::stable_sort(matches.begin(), matches.end(),
                   [&](const Match &a, const Match &b) {
                     size_t la = a.end_token - a.first_token;
                     size_t lb = b.end_token - b.first_token;
                     if (la != lb) return la > lb;
                     if (a.first_token != b.first_token) {
                       return a.first_token < b.first_token;
                     }
                     return a.entry < b.entry;
                   });
  std::vector<Match> kept;
  for (const Match &m : matches) {
    CueClass cls = entries[m.entry].cue_class;
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const Match &k) {
      return entries[k.entry].cue_class == cls && k.span.overlaps(m.span);
    });
    if (!clash) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(), [&](const Match &a, const Match &b) {
    if (a.span != b.span) return a.span < b.span;
    return entries[a.entry].cue_class < entries[b.entry].cue_class;
  });
  return kept;
}

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::LoadFile(const std::filesystem::path &file,
                       const InflectionTable &inflections) {
  Parse(read_file(file), file.string(), inflections);
}

void Lexicon::Parse(std::string_view contents, const std::string &name,
                    const InflectionTable &inflections) {
  for_each_line(contents, [&](int line, std::string_view row) {
    auto fields = text::split(row, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw LexiconError(name, line,
                         "expected pattern<TAB>cue_class[<TAB>attrs]");
    }
    LexiconEntry entry;
    entry.pattern = text::normalize(text::trim(fields[0]));
    std::string error;
    auto tokens = parse_pattern(entry.pattern, &error);
    if (!tokens) throw LexiconError(name, line, error);
    for (const PatternToken &pt : *tokens) {
      if (pt.kind == PatternToken::Kind::kLemma &&
          !inflections.HasLemma(pt.lemma)) {
        throw LexiconError(name, line,
                           "lemma <" + pt.lemma + "> has no inflection table");
      }
    }
    entry.tokens = std::move(*tokens);
    auto cls = parse_cue_class(text::trim(fields[1]));
    if (!cls) {
      throw LexiconError(name, line,
                         "unknown cue class '" + std::string(fields[1]) + "'");
    }
    entry.cue_class = *cls;
    if (fields.size() == 3 && !text::trim(fields[2]).empty()) {
      for (std::string_view kv : text::split(text::trim(fields[2]), ';')) {
        if (kv.empty()) continue;
        size_t eq = kv.find('=');
        if (eq == std::string_view::npos) {
          throw LexiconError(name, line, "attribute without '='");
        }
        std::string key(kv.substr(0, eq));
        if (std::find(std::begin(kLexiconAttrKeys), std::end(kLexiconAttrKeys),
                      key) == std::end(kLexiconAttrKeys)) {
          throw LexiconError(name, line, "unknown attribute '" + key + "'");
        }
        entry.attrs[key] = std::string(kv.substr(eq + 1));
      }
    }
    Add(std::move(entry), name, line);
  });
}

void Lexicon::Add(LexiconEntry entry, const std::string &source, int line) {
  if (entry.tokens.empty()) {
    std::string error;
    auto tokens = parse_pattern(entry.pattern, &error);
    if (!tokens) throw LexiconError(source, line, error);
    entry.tokens = std::move(*tokens);
  }
  for (const LexiconEntry &e : entries_) {
    if (e.pattern == entry.pattern && e.cue_class == entry.cue_class) {
      throw LexiconError(source, line,
                         "duplicate entry '" + entry.pattern + "'");
    }
  }
  entries_.push_back(std::move(entry));
}

// ---------------------------------------------------------------------------
// LexiconPack

LexiconPack LexiconPack::Load(const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw LexiconError(dir.string(), 0, "lexicon pack directory not found");
  }
  LexiconPack pack;
  pack.language = dir.filename().string();
  pack.cues = Lexicon(pack.language);
  pack.domain = Lexicon(pack.language);
  pack.inflections = InflectionTable::Load(dir / "inflections.tsv");

  if (fs::exists(dir / "numbers.tsv")) {
    std::string name = (dir / "numbers.tsv").string();
    for_each_line(read_file(dir / "numbers.tsv"),
                  [&](int line, std::string_view row) {
                    auto fields = text::split(row, '\t');
                    if (fields.size() != 2 || !all_digits(fields[1])) {
                      throw LexiconError(name, line, "expected word<TAB>int");
                    }
                    pack.numbers[text::normalize(fields[0])] =
                        std::stoi(std::string(fields[1]));
                  });
  }
  if (fs::exists(dir / "abbreviations.txt")) {
    for_each_line(read_file(dir / "abbreviations.txt"),
                  [&](int, std::string_view row) {
                    pack.abbreviations.emplace_back(text::trim(row));
                  });
  }

  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".tsv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path &file : files) {
    std::string stem = file.stem().string();
    if (stem == "inflections" || stem == "numbers") continue;
    if (stem == "domain") {
      pack.domain.LoadFile(file, pack.inflections);
    } else {
      pack.cues.LoadFile(file, pack.inflections);
    }
  }
  return pack;
}

std::filesystem::path default_data_dir() {
  namespace fs = std::filesystem;
#ifdef GEMIFY_BUILD_DATA_DIR
  if (fs::is_directory(GEMIFY_BUILD_DATA_DIR)) return GEMIFY_BUILD_DATA_DIR;
#endif
#ifdef GEMIFY_INSTALL_DATA_DIR
  return GEMIFY_INSTALL_DATA_DIR;
#else
  return "data";
#endif
}

std::filesystem::path default_lexicon_dir() {
  if (const char *env = std::getenv("GEMIFY_LEXICONS")) {
    return std::filesystem::path(env);
  }
  return default_data_dir() / "lexicons" / "fr";
}

}  // namespace gemify

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

#include "gemify/cues.h"

#include <algorithm>
#include <map>

#include "gemify/errors.h"

namespace gemify {
namespace {

bool is_filler(const std::vector<text::Token> &tokens, size_t t) {
  const std::string &w = tokens[t].norm;
  return w == "et" || w == "ou" || w == "mais" || w == "notamment" ||
         w == "surtout" || w == "particulièrement" ||
         (w == "en" && t + 1 < tokens.size() &&
          tokens[t + 1].norm == "particulier") ||
         (w == "particulier" && t > 0 && tokens[t - 1].norm == "en");
}

// First token of the clause once leading coordinators and focus adverbs
// are skipped.
size_t content_start(const std::vector<text::Token> &tokens) {
  size_t t = 0;
  while (t < tokens.size() && is_filler(tokens, t)) ++t;
  return t;
}

std::optional<Tense> sidecar_tense(std::string_view s) {
  if (s == "-" || s == "_" || s.empty()) return Tense::kNone;
  return parse_tense(s);
}

std::optional<Mood> sidecar_mood(std::string_view s) {
  if (s == "-" || s == "_" || s.empty()) return Mood::kNone;
  return parse_mood(s);
}

void post_matches(FactStore &store, const Document &doc, int clause,
                  const Lexicon &lexicon, const std::vector<Match> &matches,
                  const std::vector<text::Token> &tokens,
                  std::string_view producer) {
  size_t start = content_start(tokens);
  bool sentence_initial =
      doc.clauses[clause].in_sentence == SentencePosition::kInitial;
  for (const Match &m : matches) {
    const LexiconEntry &entry = lexicon.entries()[m.entry];
    Annotation ann;
    ann.clause_index = clause;
    ann.span = m.span;
    ann.cue_class = entry.cue_class;
    ann.producer = std::string(producer);
    bool init = m.first_token == start;
    if (init) ann.features["init"] = "true";
    ann.features["position"] =
        init && sentence_initial ? "detached" : "included";
    for (const auto &[key, value] : entry.attrs) {
      if (key != "referents") {
        ann.features[key] = value;
      } else if (value == "#") {
        ann.features["referent_count"] =
            m.number ? std::to_string(*m.number) : std::string(kAllReferents);
      } else if (value == "open") {
        ann.features["referent_count"] = std::string(kAllReferents);
      } else {
        ann.features["referent_count"] = value;
      }
    }
    store.Post(std::move(ann));
  }
}

template <typename Filter>
void annotate(FactStore &store, const Document &doc, const Lexicon &lexicon,
              const LexiconPack &pack, const Morphology &morph,
              std::string_view producer, Filter filter) {
  for (const Clause &clause : doc.clauses) {
    const auto &tokens = morph.clauses[clause.index].tokens;
    auto matches = select_longest(
        lexicon, match_all(lexicon, pack.inflections, pack.numbers,
                           std::span<const text::Token>(tokens), filter));
    post_matches(store, doc, clause.index, lexicon, matches, tokens, producer);
  }
}

bool is_verbal(const std::vector<Analysis> &readings) {
  return std::any_of(readings.begin(), readings.end(),
                     [](const Analysis &a) { return a.verbal(); });
}

// Picks the reading of a verbal head. Imperative only when the verb opens
// its clause; otherwise the first non-imperative finite reading wins.
const Analysis *pick_reading(const std::vector<Analysis> &readings,
                             bool clause_initial) {
  const Analysis *finite = nullptr;
  const Analysis *nonfinite = nullptr;
  for (const Analysis &a : readings) {
    if (!a.verbal()) continue;
    if (a.mood == Mood::kImperative) {
      if (clause_initial) return &a;
      continue;
    }
    if (a.finite()) {
      if (!finite) finite = &a;
    } else if (!nonfinite) {
      nonfinite = &a;
    }
  }
  if (finite) return finite;
  if (nonfinite) return nonfinite;
  for (const Analysis &a : readings) {
    if (a.verbal()) return &a;
  }
  return nullptr;
}

constexpr size_t kAuxiliaryWindow = 5;

// Auxiliary governing a participle at `head`: the nearest preceding
// non-participle AUX reading within a few tokens.
const Analysis *find_auxiliary(const ClauseTokens &ct, size_t head) {
  size_t lower = head > kAuxiliaryWindow ? head - kAuxiliaryWindow : 0;
  for (size_t t = head; t-- > lower;) {
    if (!ct.tokens[t].word) break;
    for (const Analysis &a : ct.readings[t]) {
      if (a.pos == "AUX" && a.mood != Mood::kParticiple) return &a;
    }
  }
  return nullptr;
}

}  // namespace

Sidecar parse_sidecar(std::string_view contents) {
  Sidecar out;
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 5) throw FormatError(line_no, "expected 5 fields");
    auto tense = sidecar_tense(fields[3]);
    auto mood = sidecar_mood(fields[4]);
    if (!tense) throw FormatError(line_no, "unknown tense");
    if (!mood) throw FormatError(line_no, "unknown mood");
    SidecarToken tok;
    tok.surface = std::string(fields[0]);
    if (tok.surface.empty()) throw FormatError(line_no, "empty surface");
    tok.analysis.lemma = text::normalize(fields[1]);
    tok.analysis.pos = std::string(fields[2]);
    tok.analysis.tense = *tense;
    tok.analysis.mood = *mood;
    out.tokens.push_back(std::move(tok));
  }
  return out;
}

Morphology analyze_morphology(const Document &doc,
                              const InflectionTable &inflections,
                              const Sidecar *sidecar) {
  Morphology out;
  std::map<size_t, const SidecarToken *> aligned;  // global begin offset
  if (sidecar) {
    out.has_sidecar = true;
    size_t cursor = 0;
    for (const SidecarToken &tok : sidecar->tokens) {
      size_t at = doc.text.find(tok.surface, cursor);
      if (at == std::string::npos) {
        throw IngestError("sidecar token '" + tok.surface + "' not found",
                          cursor);
      }
      aligned[at] = &tok;
      cursor = at + tok.surface.size();
    }
  }
  out.clauses.reserve(doc.clauses.size());
  for (const Clause &clause : doc.clauses) {
    ClauseTokens ct;
    ct.tokens = text::tokenize(clause.text);
    for (const text::Token &tok : ct.tokens) {
      auto it = aligned.find(clause.span.begin + tok.span.begin);
      if (it != aligned.end() && it->second->surface.size() == tok.span.size()) {
        ct.readings.push_back({it->second->analysis});
        ct.from_sidecar.push_back(true);
      } else {
        auto table = inflections.Lookup(tok.norm);
        ct.readings.emplace_back(table.begin(), table.end());
        ct.from_sidecar.push_back(false);
      }
    }
    out.clauses.push_back(std::move(ct));
  }
  return out;
}

void match_cues(FactStore &store, const Document &doc, const LexiconPack &pack,
                const Morphology &morph, std::string_view producer) {
  annotate(store, doc, pack.cues, pack, morph, producer,
           [](const LexiconEntry &e) {
             return e.cue_class != CueClass::kAnaphoricExpr &&
                    e.cue_class != CueClass::kDomainTerm;
           });
}

void detect_anaphora(FactStore &store, const Document &doc,
                     const LexiconPack &pack, const Morphology &morph,
                     std::string_view producer) {
  annotate(store, doc, pack.cues, pack, morph, producer,
           [](const LexiconEntry &e) {
             return e.cue_class == CueClass::kAnaphoricExpr;
           });
}

void tag_domain_titles(FactStore &store, const Document &doc,
                       const Lexicon &domain, const LexiconPack &pack,
                       const Morphology &morph, std::string_view producer) {
  for (const Clause &clause : doc.clauses) {
    if (doc.block_of(clause.index).kind != BlockKind::kHeading) continue;
    const auto &tokens = morph.clauses[clause.index].tokens;
    auto matches = select_longest(
        domain, match_all(domain, pack.inflections, pack.numbers,
                          std::span<const text::Token>(tokens),
                          [](const LexiconEntry &e) {
                            return e.cue_class == CueClass::kDomainTerm;
                          }));
    post_matches(store, doc, clause.index, domain, matches, tokens, producer);
  }
}

void apply_morphology(FactStore &store, const Document &doc,
                      const Morphology &morph, std::string_view producer) {
  for (const Clause &clause : doc.clauses) {
    const ClauseTokens &ct = morph.clauses[clause.index];
    size_t start = content_start(ct.tokens);
    for (const Annotation &ann : store.QueryClause(clause.index)) {
      if (!is_verb_cue(ann.cue_class) || ann.producer != producer) continue;
      std::optional<size_t> head;
      for (size_t t = 0; t < ct.tokens.size(); ++t) {
        if (ann.span.contains(ct.tokens[t].span) && is_verbal(ct.readings[t])) {
          head = t;
          break;
        }
      }
      if (!head) {
        store.Supersede(ann.id, std::nullopt);
        continue;
      }
      bool initial = *head == start ||
                     (*head == start + 1 && (ct.tokens[start].norm == "ne" ||
                                             ct.tokens[start].norm == "n'"));
      const Analysis *reading = pick_reading(ct.readings[*head], initial);
      Tense tense = reading->tense;
      Mood mood = reading->mood;
      if (mood == Mood::kParticiple) {
        const Analysis *aux = find_auxiliary(ct, *head);
        if (!aux) {
          store.Supersede(ann.id, std::nullopt);
          continue;
        }
        if (aux->lemma == "avoir") {
          tense = aux->tense == Tense::kFuture ? Tense::kFuture : Tense::kPast;
        } else {
          tense = aux->tense;
        }
        mood = aux->mood;
      }
      Annotation updated = ann;
      updated.features["tense"] = std::string(to_string(tense));
      updated.features["mood"] = std::string(to_string(mood));
      updated.features["suppressed"] = tense == Tense::kPast ? "true" : "false";
      if (tense == Tense::kFuture || mood == Mood::kImperative) {
        updated.features["injunctive"] = "true";
      }
      store.Supersede(ann.id, std::move(updated));
    }
  }
}

}  // namespace gemify

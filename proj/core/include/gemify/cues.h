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

#ifndef GEMIFY_CUES_H_
#define GEMIFY_CUES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/document.h"
#include "gemify/fact_store.h"
#include "gemify/lexicon.h"
#include "gemify/text.h"

namespace gemify {

// One row of a token sidecar: surface, lemma, POS tag, tense, mood.
struct SidecarToken {
  std::string surface;
  Analysis analysis;
};

// External token annotations (e.g. from a POS tagger). Blank lines mark
// sentence breaks and are otherwise ignored.
struct Sidecar {
  std::vector<SidecarToken> tokens;
};

// Throws FormatError on a row without 5 fields or with unknown tense/mood.
Sidecar parse_sidecar(std::string_view contents);

// Tokens and readings of every clause. Readings come from the sidecar when a
// sidecar token is aligned with the clause token, else from the inflection
// table.
struct ClauseTokens {
  std::vector<text::Token> tokens;
  std::vector<std::vector<Analysis>> readings;
  std::vector<bool> from_sidecar;
};

struct Morphology {
  std::vector<ClauseTokens> clauses;
  bool has_sidecar = false;
};

// Aligns sidecar surfaces with the document text by sequential search.
// Throws IngestError at the offset where a surface cannot be found.
Morphology analyze_morphology(const Document &doc,
                              const InflectionTable &inflections,
                              const Sidecar *sidecar = nullptr);

// Posts one fact per selected lexicon match (connectors, markers, verbs).
// Features: position=detached|included, init=true when the match opens its
// clause, and the entry attributes.
void match_cues(FactStore &store, const Document &doc, const LexiconPack &pack,
                const Morphology &morph, std::string_view producer);

// Resolves tense and mood of verb cues. Past-tense verb cues are marked
// suppressed=true; future or imperative ones injunctive=true. A verb cue
// whose head is not verbal (sidecar NOUN/ADJ, or a bare participle with no
// auxiliary) is retracted.
void apply_morphology(FactStore &store, const Document &doc,
                      const Morphology &morph, std::string_view producer);

// AnaphoricExpr facts with referent_count=N, or referent_count=all.
void detect_anaphora(FactStore &store, const Document &doc,
                     const LexiconPack &pack, const Morphology &morph,
                     std::string_view producer);

// DomainTerm facts on heading clauses matching the domain lexicon.
void tag_domain_titles(FactStore &store, const Document &doc,
                       const Lexicon &domain, const LexiconPack &pack,
                       const Morphology &morph, std::string_view producer);

inline constexpr std::string_view kAllReferents = "all";

}  // namespace gemify

#endif  // GEMIFY_CUES_H_

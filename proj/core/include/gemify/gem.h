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

#ifndef GEMIFY_GEM_H_
#define GEMIFY_GEM_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/scope.h"

namespace gemify {

struct GemRecommendation {
  std::vector<std::string> decision_variables;  // outermost first
  std::vector<std::string> actions;
  std::vector<std::string> explanations;

  friend bool operator==(const GemRecommendation &,
                         const GemRecommendation &) = default;
};

struct GemDocument {
  std::string source_id;
  std::vector<GemRecommendation> recommendations;

  friend bool operator==(const GemDocument &, const GemDocument &) = default;
};

// Element name of a recommendation: "recommandation" or "recommendation".
enum class GemNames { kFrench, kEnglish };
std::optional<GemNames> parse_gem_names(std::string_view s);

// Merges maximal runs of consecutive couples with identical chains. Each
// explanation joins the latest preceding group with its chain, else the
// latest preceding group; one that precedes every group is reported in
// `warnings` and dropped.
std::vector<GemRecommendation> group_couples(
    const std::vector<Couple> &couples,
    const std::vector<Couple> &explanations = {},
    std::vector<std::string> *warnings = nullptr);

// Two-space indentation, one trailing newline, no XML declaration.
std::string emit_xml(const GemDocument &doc, GemNames names = GemNames::kFrench);

// Accepts either recommendation element name. Throws GemParseError on
// malformed XML or anything outside the subset.
GemDocument parse_gem(std::string_view xml, std::string source_id = "");

std::string xml_escape(std::string_view s);

}  // namespace gemify

#endif  // GEMIFY_GEM_H_

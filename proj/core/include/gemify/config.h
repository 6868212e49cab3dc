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

#ifndef GEMIFY_CONFIG_H_
#define GEMIFY_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gemify/gem.h"
#include "gemify/lexicon.h"
#include "gemify/pipeline.h"

namespace gemify {

inline constexpr std::string_view kDumpKinds[] = {"cues", "segments", "tree",
                                                  "couples", "facts"};

// Settings for one CLI run. Empty paths mean "use the default".
struct RunConfig {
  std::filesystem::path lexicon_dir;
  bool domain_lexicon = true;
  std::filesystem::path rules;
  GemNames gem_names = GemNames::kFrench;
  std::filesystem::path out;
  std::vector<std::string> dumps;
  std::vector<std::string> disabled_stages;
  std::filesystem::path abbreviations;  // extra entries, one per line
  size_t heading_max_length = 120;
  std::vector<std::string> enum_markers;  // empty: built-in markers
  std::filesystem::path sidecar;
  bool stats = false;
};

// Reads "key = value" lines ('#' starts a comment) on top of `base`.
// Keys: lexicons, domain_lexicon, rules, gem_names, out, dump,
// disable_stage, abbreviations, heading_max_length, enum_markers, sidecar,
// stats. Throws ConfigError naming the line.
RunConfig parse_config(std::string_view contents, RunConfig base = {});
RunConfig load_config(const std::filesystem::path &file, RunConfig base = {});

// Fails fast: referenced files must exist and parse; dump kinds and stage
// names must be known. Throws ConfigError.
void validate_config(const RunConfig &config);

struct LoadedConfig {
  LexiconPack pack;
  PipelineOptions options;
};

// Loads the lexicon pack and the rule table and fills pipeline options.
// Throws ConfigError or LexiconError. The sidecar is left unset.
LoadedConfig load_run(const RunConfig &config);

}  // namespace gemify

#endif  // GEMIFY_CONFIG_H_

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

#include "gemify/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gemify/errors.h"

namespace gemify {
namespace {

std::string read_text(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  for (std::string_view item : text::split(value, ',')) {
    item = text::trim(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view contents, RunConfig base) {
  RunConfig c = std::move(base);
  int line_no = 0;
  for (std::string_view line : text::split(contents, '\n')) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string &msg) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + msg);
    };
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string key(text::trim(line.substr(0, eq)));
    std::string_view value = text::trim(line.substr(eq + 1));
    auto boolean = [&] {
      if (value == "true" || value == "on" || value == "1") return true;
      if (value == "false" || value == "off" || value == "0") return false;
      fail("expected a boolean for '" + key + "'");
      return false;
    };
    if (key == "lexicons") {
      c.lexicon_dir = std::string(value);
    } else if (key == "domain_lexicon") {
      c.domain_lexicon = boolean();
    } else if (key == "rules") {
      c.rules = std::string(value);
    } else if (key == "gem_names") {
      auto names = parse_gem_names(value);
      if (!names) fail("gem_names must be fr or en");
      c.gem_names = *names;
    } else if (key == "out") {
      c.out = std::string(value);
    } else if (key == "dump") {
      for (auto &d : split_list(value)) c.dumps.push_back(d);
    } else if (key == "disable_stage") {
      for (auto &s : split_list(value)) c.disabled_stages.push_back(s);
    } else if (key == "abbreviations") {
      c.abbreviations = std::string(value);
    } else if (key == "heading_max_length") {
      size_t n = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || p != value.data() + value.size() || n == 0) {
        fail("heading_max_length must be a positive integer");
      }
      c.heading_max_length = n;
    } else if (key == "enum_markers") {
      c.enum_markers.clear();
      std::istringstream in{std::string(value)};
      for (std::string m; in >> m;) c.enum_markers.push_back(m);
    } else if (key == "sidecar") {
      c.sidecar = std::string(value);
    } else if (key == "stats") {
      c.stats = boolean();
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path &file, RunConfig base) {
  return parse_config(read_text(file), std::move(base));
}

void validate_config(const RunConfig &c) {
  for (const std::string &d : c.dumps) {
    if (std::find(std::begin(kDumpKinds), std::end(kDumpKinds), d) ==
        std::end(kDumpKinds)) {
      throw ConfigError("unknown dump kind '" + d + "'");
    }
  }
  try {
    stages_without(c.disabled_stages);
  } catch (const StageError &e) {
    throw ConfigError(e.what());
  }
  auto must_exist = [](const std::filesystem::path &p, const char *what) {
    if (!p.empty() && !std::filesystem::exists(p)) {
      throw ConfigError(std::string(what) + " not found: " + p.string());
    }
  };
  must_exist(c.lexicon_dir, "lexicon directory");
  must_exist(c.rules, "rule table");
  must_exist(c.abbreviations, "abbreviation list");
  must_exist(c.sidecar, "sidecar");
}

LoadedConfig load_run(const RunConfig &c) {
  validate_config(c);
  LoadedConfig out;
  out.pack = LexiconPack::Load(c.lexicon_dir.empty() ? default_lexicon_dir()
                                                      : c.lexicon_dir);
  if (!c.abbreviations.empty()) {
    for (std::string_view line : text::split(read_text(c.abbreviations), '\n')) {
      line = text::trim(line);
      if (!line.empty() && line.front() != '#') {
        out.pack.abbreviations.emplace_back(line);
      }
    }
  }
  PipelineOptions &o = out.options;
  o.document = default_document_options(out.pack);
  o.document.heading_max_length = c.heading_max_length;
  if (!c.enum_markers.empty()) o.document.enum_markers = c.enum_markers;
  if (!c.rules.empty()) {
    try {
      o.rules = load_rule_table(c.rules);
    } catch (const FormatError &e) {
      throw ConfigError(c.rules.string() + ": " + e.what());
    }
  }
  o.domain_lexicon = c.domain_lexicon;
  o.gem_names = c.gem_names;
  o.stages = stages_without(c.disabled_stages);
  return out;
}

}  // namespace gemify

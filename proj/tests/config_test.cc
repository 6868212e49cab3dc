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
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "gemify/config.h"
#include "gemify/errors.h"
#include "test_support.h"

using namespace gemify;

TEST_SUITE("config") {
  TEST_CASE("key = value lines") {
    auto c = parse_config(
        "# comment\n"
        "domain_lexicon = off\n"
        "gem_names = en\n"
        "dump = tree, couples\n"
        "disable_stage = revision\n"
        "heading_max_length = 80\n"
        "enum_markers = - +\n"
        "stats = true\n");
    CHECK_FALSE(c.domain_lexicon);
    CHECK(c.gem_names == GemNames::kEnglish);
    CHECK(c.dumps == std::vector<std::string>{"tree", "couples"});
    CHECK(c.disabled_stages == std::vector<std::string>{"revision"});
    CHECK(c.heading_max_length == 80);
    CHECK(c.enum_markers == std::vector<std::string>{"-", "+"});
    CHECK(c.stats);
  }

  TEST_CASE("errors name the line") {
    try {
      parse_config("stats = true\nbogus = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("stats = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("heading_max_length = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("gem_names = de\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent.conf"), ConfigError);
  }

  TEST_CASE("validation fails fast") {
    RunConfig c;
    c.dumps = {"everything"};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.dumps = {};
    c.disabled_stages = {"morphology"};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.disabled_stages = {};
    c.rules = "/nonexistent/rules.tsv";
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.rules.clear();
    c.lexicon_dir = "/nonexistent/lexicons";
    CHECK_THROWS_AS(load_run(c), ConfigError);
  }

  TEST_CASE("a loaded run matches the library defaults") {
    RunConfig c;
    c.lexicon_dir = testing::lexicon_dir();
    auto loaded = load_run(c);
    auto text = testing::read_fixture("colon_biopsy.txt");
    auto a = run_pipeline(text, loaded.pack, loaded.options, "colon_biopsy");
    CHECK(a.xml == testing::read_fixture("colon_biopsy.gem.xml"));
  }

  TEST_CASE("extra abbreviations and rule tables are read") {
    auto dir = std::filesystem::temp_directory_path() / "gemify_config_test";
    std::filesystem::create_directories(dir);
    {
      std::ofstream(dir / "abbr.txt") << "# extra\nA.\n";
      std::ofstream(dir / "rules.tsv") << format_rule_table(default_rule_table());
      std::ofstream(dir / "bad.tsv") << "cue:X=>Action\tnope\n";
    }
    RunConfig c;
    c.lexicon_dir = testing::lexicon_dir();
    c.abbreviations = dir / "abbr.txt";
    c.rules = dir / "rules.tsv";
    auto loaded = load_run(c);
    CHECK(loaded.options.rules == default_rule_table());
    auto r = run_pipeline("A. B.", loaded.pack, loaded.options);
    CHECK(r.document.sentences.size() == 1);
    c.rules = dir / "bad.tsv";
    CHECK_THROWS_AS(load_run(c), ConfigError);
    std::filesystem::remove_all(dir);
  }
}

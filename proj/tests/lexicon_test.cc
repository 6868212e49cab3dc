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
#include <algorithm>
#include <string>

#include "doctest.h"
#include "gemify/errors.h"
#include "gemify/lexicon.h"
#include "test_support.h"

using namespace gemify;

namespace {

std::vector<std::string> matched(const Lexicon &lex, const LexiconPack &pack,
                                 std::string_view s) {
  auto tokens = text::tokenize(s);
  auto all = match_all(lex, pack.inflections, pack.numbers, tokens,
                       [](const LexiconEntry &) { return true; });
  all = select_longest(lex, std::move(all));
  std::vector<std::string> out;
  for (const auto &m : all) {
    out.push_back(std::string(s.substr(m.span.begin, m.span.size())));
  }
  return out;
}

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("cue class names round-trip") {
    for (CueClass c : kAllCueClasses) {
      auto parsed = parse_cue_class(to_string(c));
      REQUIRE(parsed.has_value());
      CHECK(*parsed == c);
    }
    CHECK_FALSE(parse_cue_class("Nonsense").has_value());
  }

  TEST_CASE("pattern syntax") {
    std::string err;
    auto p = parse_pattern("en cas de|d'", &err);
    REQUIRE(p.has_value());
    REQUIRE(p->size() == 3);
    CHECK((*p)[2].alternatives == std::vector<std::string>{"de", "d'"});
    auto slot = parse_pattern("<recommander>", &err);
    REQUIRE(slot.has_value());
    CHECK((*slot)[0].kind == PatternToken::Kind::kLemma);
    CHECK_FALSE(parse_pattern("", &err).has_value());
  }

  TEST_CASE("shipped pack loads") {
    const auto &p = testing::pack();
    CHECK_FALSE(p.cues.empty());
    CHECK_FALSE(p.domain.empty());
    CHECK(p.inflections.size() > 0);
    CHECK(p.numbers.at("deux") == 2);
    CHECK(std::find(p.abbreviations.begin(), p.abbreviations.end(), "cf.") !=
          p.abbreviations.end());
  }

  TEST_CASE("malformed lexicon lines name the file and line") {
    const auto &p = testing::pack();
    Lexicon lex("fr");
    try {
      lex.Parse("si\tConditionConnector\nfoo\tBogusClass\n", "x.tsv",
                p.inflections);
      FAIL("expected LexiconError");
    } catch (const LexiconError &e) {
      CHECK(e.file() == "x.tsv");
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(lex.Parse("si\tConditionConnector\tcolour=red\n", "y.tsv",
                              p.inflections),
                    LexiconError);
    CHECK_THROWS_AS(lex.Parse("<nonverb>\tRecommendVerb\n", "z.tsv",
                              p.inflections),
                    LexiconError);
  }

  TEST_CASE("duplicate entries are rejected") {
    const auto &p = testing::pack();
    Lexicon lex("fr");
    CHECK_THROWS_AS(lex.Parse("si\tConditionConnector\nsi\tConditionConnector\n",
                              "d.tsv", p.inflections),
                    LexiconError);
  }

  TEST_CASE("longest match wins over its prefix") {
    const auto &p = testing::pack();
    auto m = matched(p.cues, p, "en cas d'aspect normal");
    REQUIRE_FALSE(m.empty());
    CHECK(m.front() == "en cas d'");
  }

  TEST_CASE("lemma slots match inflected forms") {
    const auto &p = testing::pack();
    auto m = matched(p.cues, p, "des biopsies sont recommandées");
    CHECK(std::find(m.begin(), m.end(), "recommandées") != m.end());
  }

  TEST_CASE("numeral slots bind number words") {
    const auto &p = testing::pack();
    auto tokens = text::tokenize("dans les deux cas");
    auto all = match_all(p.cues, p.inflections, p.numbers, tokens,
                         [](const LexiconEntry &e) {
                           return e.cue_class == CueClass::kAnaphoricExpr;
                         });
    all = select_longest(p.cues, std::move(all));
    REQUIRE(all.size() == 1);
    CHECK(all[0].number == 2);
  }
}

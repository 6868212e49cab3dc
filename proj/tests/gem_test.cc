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
#include <string>

#include "doctest.h"
#include "gemify/errors.h"
#include "gemify/gem.h"
#include "test_support.h"
#include "xml_oracle.h"

using namespace gemify;

namespace {

GemParseError parse_error(const std::string &xml) {
  try {
    parse_gem(xml);
  } catch (const GemParseError &e) {
    return e;
  }
  FAIL("expected GemParseError for " << xml);
  return GemParseError(0, 0, "");
}

}  // namespace

TEST_SUITE("gem") {
  TEST_CASE("empty document is one self-closing line") {
    CHECK(emit_xml({}) == "<knowledge.component/>\n");
    CHECK(parse_gem("<knowledge.component/>").recommendations.empty());
    CHECK(group_couples({}).empty());
  }

  TEST_CASE("golden output of the nested paragraph fixture") {
    auto r = testing::run_fixture("colon_biopsy.txt");
    CHECK(r.xml == testing::read_fixture("colon_biopsy.gem.xml"));
    REQUIRE(r.gem.recommendations.size() == 3);
    CHECK(r.gem.recommendations[0].decision_variables.size() == 2);
    CHECK(r.gem.recommendations[1].decision_variables.size() == 3);
    CHECK(r.gem.recommendations[2].decision_variables.size() == 1);
    CHECK(r.gem.recommendations[0].actions.size() == 3);
    CHECK(parse_gem(r.xml, "colon_biopsy") == r.gem);
  }

  TEST_CASE("independent parser and DTD content model accept the output") {
    for (const char *name : {"colon_biopsy.txt", "insulin.txt", "statin.txt", "headings.txt"}) {
      for (GemNames n : {GemNames::kFrench, GemNames::kEnglish}) {
        auto o = testing::options();
        o.gem_names = n;
        auto r = testing::run_fixture(name, o);
        bool valid = false;
        auto doc = testing::independent_read(r.xml, n, &valid);
        CHECK_MESSAGE(valid, name);
        CHECK(doc.recommendations == r.gem.recommendations);
      }
    }
  }

  TEST_CASE("grouping merges consecutive actions with equal chains") {
    std::vector<Couple> couples = {{{"A"}, "x", 0, 1},
                                   {{"A"}, "y", 1, 1},
                                   {{}, "z", 2, 0},
                                   {{"A"}, "w", 3, 1}};
    auto g = group_couples(couples);
    REQUIRE(g.size() == 3);
    CHECK(g[0].actions == std::vector<std::string>{"x", "y"});
    CHECK(g[1].decision_variables.empty());
    CHECK(g[2].actions == std::vector<std::string>{"w"});
  }

  TEST_CASE("explanations join the recommendation of their frame") {
    auto r = testing::run_fixture("statin.txt");
    REQUIRE(r.gem.recommendations.size() == 1);
    const auto &rec = r.gem.recommendations[0];
    REQUIRE(rec.explanations.size() == 1);
    CHECK(rec.explanations[0].rfind("En effet", 0) == 0);
    CHECK(r.xml.find("<explanation>En effet") != std::string::npos);
  }

  TEST_CASE("escaping") {
    CHECK(xml_escape("a < b && c > d") == "a &lt; b &amp;&amp; c &gt; d");
    GemDocument d{"x", {{{"<1g/l & \"q\""}, {"it's"}, {}}}};
    CHECK(parse_gem(emit_xml(d), "x") == d);
  }

  TEST_CASE("English element names") {
    GemDocument d{"x", {{{}, {"a"}, {}}}};
    auto xml = emit_xml(d, GemNames::kEnglish);
    CHECK(xml.find("<recommendation>") != std::string::npos);
    CHECK(parse_gem(xml, "x") == d);
    CHECK(parse_gem_names("en") == GemNames::kEnglish);
    CHECK(parse_gem_names("fr") == GemNames::kFrench);
    CHECK_FALSE(parse_gem_names("de").has_value());
  }

  TEST_CASE("prolog, comments and character references are accepted") {
    auto d = parse_gem("<?xml version=\"1.0\"?>\n<!-- c -->\n"
                       "<knowledge.component><recommandation>"
                       "<action>&#233;t&#xE9;</action>"
                       "</recommandation></knowledge.component>\n");
    REQUIRE(d.recommendations.size() == 1);
    CHECK(d.recommendations[0].actions[0] == "été");
  }

  TEST_CASE("malformed or nonconforming input reports line and column") {
    auto e = parse_error("<knowledge.component>\n  <foo/>\n</knowledge.component>");
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    parse_error("<knowledge.component><recommandation></recommandation>"
                "</knowledge.component>");
    parse_error("<knowledge.component><recommandation><action>a</action>"
                "<decision.variable>b</decision.variable></recommandation>"
                "</knowledge.component>");
    parse_error("<knowledge.component><recommandation><action>a</actio>"
                "</recommandation></knowledge.component>");
    parse_error("<knowledge.component><recommandation a=\"1\"/>"
                "</knowledge.component>");
    parse_error("<knowledge.component><recommandation><action>&bogus;"
                "</action></recommandation></knowledge.component>");
    parse_error("<knowledge.component>");
    parse_error("<other/>");
    parse_error("<knowledge.component/><extra/>");
  }
}

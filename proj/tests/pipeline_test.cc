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
#include "gemify/pipeline.h"
#include "test_support.h"

using namespace gemify;

TEST_SUITE("pipeline") {
  TEST_CASE("stage lists") {
    CHECK(all_stages().size() == std::size(kStageOrder));
    auto s = stages_without({"revision"});
    CHECK(std::find(s.begin(), s.end(), "revision") == s.end());
    CHECK_THROWS_AS(stages_without({"morphology"}), StageError);
    CHECK_THROWS_AS(stages_without({"emission"}), StageError);
    CHECK_THROWS_AS(stages_without({"spellcheck"}), StageError);
  }

  TEST_CASE("stage order is enforced") {
    auto o = testing::options();
    o.stages = {"material-structure", "cues", "morphology", "emission"};
    CHECK_THROWS_AS(testing::run("Il faut traiter.", o), StageError);
    o.stages = {"material-structure", "morphology"};
    CHECK_THROWS_AS(testing::run("Il faut traiter.", o), StageError);
  }

  TEST_CASE("the log follows the declared order") {
    std::vector<std::string> seen;
    auto o = testing::options();
    o.after_stage = [&](std::string_view stage, const FactStore &) {
      seen.emplace_back(stage);
    };
    auto r = testing::run_fixture("colon_biopsy.txt", o);
    CHECK(seen == all_stages());
    CHECK(r.store.stage_log() == all_stages());
  }

  TEST_CASE("a failing stage is named with the last clause it touched") {
    auto o = testing::options();
    o.after_stage = [](std::string_view stage, const FactStore &) {
      if (stage == kCues) throw std::runtime_error("boom");
    };
    try {
      testing::run_fixture("colon_biopsy.txt", o);
      FAIL("expected PipelineError");
    } catch (const PipelineError &e) {
      CHECK(e.stage() == "cues");
      CHECK(e.last_clause() == 8);
      CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
  }

  TEST_CASE("ingest errors pass through unchanged") {
    CHECK_THROWS_AS(testing::run("ab\xff"), IngestError);
  }

  TEST_CASE("disabling cues leaves everything untyped") {
    auto o = testing::options();
    o.stages = stages_without({"cues"});
    auto r = testing::run_fixture("colon_biopsy.txt", o);
    CHECK(r.store.size() == 0);
    for (const auto &s : r.segments) CHECK(s.kind == SegmentKind::kUntyped);
    CHECK(r.xml == "<knowledge.component/>\n");
  }

  TEST_CASE("disabling default scopes attaches everything to the root") {
    auto o = testing::options();
    o.stages = stages_without({"default-scopes"});
    auto r = testing::run_fixture("colon_biopsy.txt", o);
    CHECK(r.tree.frames.size() == 1);
    REQUIRE(r.gem.recommendations.size() == 1);
    CHECK(r.gem.recommendations[0].decision_variables.empty());
    CHECK(r.gem.recommendations[0].actions.size() == 5);
  }

  TEST_CASE("revision events are recorded in the store") {
    auto r = testing::run_fixture("statin.txt");
    REQUIRE(r.store.frame_events().size() == 1);
    const auto &e = r.store.frame_events()[0];
    CHECK(e.action == RevisionAction::kClosed);
    CHECK(e.producer == "revision");
    CHECK(e.after.last < e.before.last);
  }

  TEST_CASE("statistics") {
    auto r = testing::run_fixture("headings.txt");
    auto s = compute_stats(r);
    CHECK(s.frames == 3);
    CHECK(s.heading_frames == 2);
    CHECK(s.detached_frames == 1);
    auto text = format_stats(s);
    CHECK(text.find("frames=3\n") != std::string::npos);
    CHECK(text.find("default_rule_share=") != std::string::npos);
    auto insulin = compute_stats(testing::run_fixture("insulin.txt"));
    CHECK(insulin.included_frames == 2);
    CHECK(insulin.revised_frames == 2);
    CHECK(insulin.default_rule_share == 0.0);
  }

  TEST_CASE("content conservation") {
    for (const char *name : {"colon_biopsy.txt", "insulin.txt", "statin.txt", "headings.txt"}) {
      auto r = testing::run_fixture(name);
      std::multiset<std::string> in_xml, in_couples;
      for (const auto &rec : r.gem.recommendations) {
        in_xml.insert(rec.actions.begin(), rec.actions.end());
      }
      for (const auto &c : r.couples) in_couples.insert(c.action);
      CHECK(in_xml == in_couples);
    }
  }
}

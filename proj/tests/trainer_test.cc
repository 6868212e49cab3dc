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
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "doctest.h"
#include "gemify/errors.h"
#include "gemify/segmenter.h"
#include "test_support.h"
#include "trainer_oracle.h"

using namespace gemify;

namespace {

// Same rule set and scores as the oracle; ordered by (score desc, key asc).
void check_against_oracle(const RuleTable &table,
                          const std::vector<LabeledClause> &corpus) {
  std::map<std::string, double> expected;
  for (const auto &r : testing::oracle_rules(corpus, table.threshold)) {
    expected[r.key()] = r.score;
  }
  std::map<std::string, double> got;
  for (const auto &r : table.rules) got[r.key()] = r.score;
  REQUIRE(got.size() == table.rules.size());
  REQUIRE(got.size() == expected.size());
  for (const auto &[key, score] : expected) {
    REQUIRE(got.count(key) == 1);
    CHECK(std::abs(got[key] - score) < 1e-9);
  }
  for (size_t i = 1; i < table.rules.size(); ++i) {
    const auto &x = table.rules[i - 1];
    const auto &y = table.rules[i];
    CHECK((x.score > y.score || (x.score == y.score && x.key() < y.key())));
  }
}

}  // namespace

TEST_SUITE("trainer") {
  TEST_CASE("chi-square of a hand table") {
    // 100 * (30*55 - 10*5)^2 / (40 * 60 * 35 * 65) = 256000000 / 5460000
    CHECK(chi_square(30, 10, 5, 55) == doctest::Approx(46.886446886446886));
    CHECK(std::abs(testing::pearson_chi_square(30, 10, 5, 55) -
                   chi_square(30, 10, 5, 55)) < 1e-9);
    CHECK(chi_square(30, 10, 5, 55) == doctest::Approx(46.89).epsilon(1e-4));
  }

  TEST_CASE("degenerate margins score zero") {
    CHECK(chi_square(0, 0, 5, 5) == 0);
    CHECK(chi_square(5, 5, 0, 0) == 0);
    CHECK(chi_square(10, 0, 10, 0) == 0);
  }

  TEST_CASE("perfect association scores N") {
    // N = 2 stays below the 3.841 threshold.
    CHECK(train_from_clauses(testing::perfect_corpus(1)).rules.empty());
    for (int half : {2, 7, 50, 100}) {
      CHECK(chi_square(half, 0, 0, half) == doctest::Approx(2.0 * half));
      auto t = train_from_clauses(testing::perfect_corpus(half));
      REQUIRE(t.rules.size() == 1);
      CHECK(t.rules[0].key() == "cue:RecommendVerb=>Action");
      CHECK(t.rules[0].score == doctest::Approx(2.0 * half));
    }
  }

  TEST_CASE("independence scores zero and yields no rule") {
    CHECK(chi_square(10, 20, 5, 10) == 0);
    auto t = train_from_clauses(testing::independent_corpus());
    CHECK(t.rules.empty());
  }

  TEST_CASE("random corpora agree with a brute-force recount") {
    std::mt19937 rng(20261017);
    for (int round = 0; round < 200; ++round) {
      auto corpus = testing::random_corpus(rng);
      auto table = train_from_clauses(corpus);
      check_against_oracle(table, corpus);
    }
  }

  TEST_CASE("training needs two gold documents") {
    auto o = testing::options();
    TrainingDocument one{"a", "Il faut traiter.", {}};
    CHECK_THROWS_AS(train_bundles({one}, testing::pack(), o), ConfigError);
  }

  TEST_CASE("untyped gold labels are rejected") {
    auto o = testing::options();
    TrainingDocument a{"a", "Il faut traiter.",
                       {{"a", {0, 0}, SegmentKind::kUntyped, ""}}};
    TrainingDocument b{"b", "Il faut traiter.", {}};
    CHECK_THROWS_AS(train_bundles({a, b}, testing::pack(), o), FormatError);
  }

  TEST_CASE("training on pipeline output recovers the oracle table") {
    std::vector<TrainingDocument> corpus;
    std::vector<LabeledClause> flat;
    for (const char *name : {"colon_biopsy.txt", "insulin.txt", "statin.txt"}) {
      auto r = testing::run_fixture(name);
      std::string id = std::filesystem::path(name).stem().string();
      auto gold = parse_standoff(format_standoff(id, r.document, r.segments));
      corpus.push_back({id, testing::read_fixture(name), gold});
      auto labeled = label_clauses(clause_features(r.store, r.document), gold);
      flat.insert(flat.end(), labeled.begin(), labeled.end());
    }
    auto table = train_bundles(corpus, testing::pack(), testing::options());
    CHECK_FALSE(table.rules.empty());
    check_against_oracle(table, flat);
  }
}

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
#ifndef GEMIFY_TESTS_TRAINER_ORACLE_H_
#define GEMIFY_TESTS_TRAINER_ORACLE_H_

// Brute-force reference for the chi-square trainer. Deliberately naive: every
// conjunction over the feature universe is recounted clause by clause.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gemify/segmenter.h"

namespace gemify::testing {

// Pearson's statistic as the sum of (observed - expected)^2 / expected.
inline double pearson_chi_square(double a, double b, double c, double d) {
  const double n = a + b + c + d;
  const double rows[2] = {a + b, c + d};
  const double cols[2] = {a + c, b + d};
  const double obs[2][2] = {{a, b}, {c, d}};
  double sum = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = rows[i] * cols[j] / n;
      if (e == 0) return 0;
      sum += (obs[i][j] - e) * (obs[i][j] - e) / e;
    }
  }
  return sum;
}

struct OracleRule {
  std::vector<std::string> features;
  SegmentKind kind;
  double score;
  std::string key() const {
    std::string k;
    for (size_t i = 0; i < features.size(); ++i) {
      if (i) k += "&";
      k += features[i];
    }
    return k + "=>" + std::string(to_string(kind));
  }
};

inline bool covers(const LabeledClause &c, const std::vector<std::string> &f) {
  return std::all_of(f.begin(), f.end(),
                     [&](const std::string &x) { return c.features.count(x); });
}

inline std::vector<OracleRule> oracle_rules(
    const std::vector<LabeledClause> &corpus, double threshold) {
  std::set<std::string> universe_set;
  for (const auto &c : corpus) {
    universe_set.insert(c.features.begin(), c.features.end());
  }
  std::vector<std::string> u(universe_set.begin(), universe_set.end());
  std::vector<std::vector<std::string>> conjunctions;
  for (size_t i = 0; i < u.size(); ++i) {
    conjunctions.push_back({u[i]});
    for (size_t j = i + 1; j < u.size(); ++j) {
      conjunctions.push_back({u[i], u[j]});
      for (size_t k = j + 1; k < u.size(); ++k) {
        conjunctions.push_back({u[i], u[j], u[k]});
      }
    }
  }
  auto count = [&](const std::vector<std::string> &f, SegmentKind kind,
                   double *a, double *b, double *c, double *d) {
    *a = *b = *c = *d = 0;
    for (const auto &cl : corpus) {
      const bool has = covers(cl, f);
      const bool is = cl.label == kind;
      (has ? (is ? *a : *b) : (is ? *c : *d)) += 1;
    }
  };
  std::vector<OracleRule> out;
  for (const auto &f : conjunctions) {
    const bool cue = std::any_of(f.begin(), f.end(), [](const std::string &x) {
      return x.rfind("cue:", 0) == 0 || x.rfind("init:", 0) == 0 ||
             x.rfind("sent_init:", 0) == 0 || x.rfind("suppressed:", 0) == 0;
    });
    if (!cue) continue;
    double a, b, c, d;
    count(f, SegmentKind::kCondition, &a, &b, &c, &d);
    if (a + b == 0) continue;  // never observed
    for (auto kind : {SegmentKind::kCondition, SegmentKind::kAction,
                      SegmentKind::kExplanation}) {
      count(f, kind, &a, &b, &c, &d);
      if (a * d <= b * c) continue;
      const double score = pearson_chi_square(a, b, c, d);
      if (score < threshold) continue;
      // A proper non-empty subset covering the same clauses makes it redundant.
      bool redundant = false;
      for (unsigned mask = 1; mask + 1 < (1u << f.size()); ++mask) {
        std::vector<std::string> sub;
        for (size_t i = 0; i < f.size(); ++i) {
          if (mask & (1u << i)) sub.push_back(f[i]);
        }
        double sa, sb, sc, sd;
        count(sub, kind, &sa, &sb, &sc, &sd);
        redundant = redundant || (sa == a && sb == b);
      }
      if (!redundant) out.push_back({f, kind, score});
    }
  }
  std::sort(out.begin(), out.end(), [](const OracleRule &x, const OracleRule &y) {
    if (x.score != y.score) return x.score > y.score;
    return x.key() < y.key();
  });
  return out;
}

inline std::vector<LabeledClause> perfect_corpus(int half) {
  std::vector<LabeledClause> out;
  for (int i = 0; i < half; ++i) {
    out.push_back({{"cue:RecommendVerb"}, SegmentKind::kAction});
    out.push_back({{}, SegmentKind::kUntyped});
  }
  return out;
}

// a/b = c/d for the only feature, so the statistic vanishes.
inline std::vector<LabeledClause> independent_corpus() {
  std::vector<LabeledClause> out;
  for (int i = 0; i < 10; ++i) {
    out.push_back({{"cue:DeonticModal"}, SegmentKind::kAction});
    out.push_back({{"cue:DeonticModal"}, SegmentKind::kUntyped});
    out.push_back({{}, SegmentKind::kAction});
    out.push_back({{}, SegmentKind::kUntyped});
  }
  return out;
}

// Up to 200 clauses whose labels are correlated with a few features.
inline std::vector<LabeledClause> random_corpus(std::mt19937 &rng) {
  static const std::vector<std::string> features = {
      "cue:ConditionConnector", "cue:DeonticModal", "init:ConditionConnector",
      "sent_init:JustificationMarker", "tense:present", "mood:infinitive",
      "pos:initial", "pos:final"};
  std::uniform_int_distribution<int> size(2, 200);
  std::uniform_real_distribution<double> unit(0, 1);
  const int n = size(rng);
  std::vector<LabeledClause> out;
  for (int i = 0; i < n; ++i) {
    LabeledClause c;
    const int label = std::uniform_int_distribution<int>(0, 3)(rng);
    c.label = static_cast<SegmentKind>(label);
    for (size_t f = 0; f < features.size(); ++f) {
      const double bias = (static_cast<int>(f % 4) == label) ? 0.7 : 0.25;
      if (unit(rng) < bias) c.features.insert(features[f]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gemify::testing

#endif  // GEMIFY_TESTS_TRAINER_ORACLE_H_

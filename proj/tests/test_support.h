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

#ifndef GEMIFY_TESTS_TEST_SUPPORT_H_
#define GEMIFY_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gemify/lexicon.h"
#include "gemify/pipeline.h"
#include "gemify/scope.h"

namespace gemify::testing {

inline std::filesystem::path fixture_path(const std::string &name) {
  return std::filesystem::path(GEMIFY_FIXTURES_DIR) / name;
}

inline std::string read_fixture(const std::string &name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::filesystem::path lexicon_dir() {
  return std::filesystem::path(GEMIFY_TEST_DATA_DIR) / "lexicons" / "fr";
}

// The shipped French pack, loaded once.
inline const LexiconPack &pack() {
  static const LexiconPack *p = new LexiconPack(LexiconPack::Load(lexicon_dir()));
  return *p;
}

inline PipelineOptions options() {
  PipelineOptions o;
  o.document = default_document_options(pack());
  return o;
}

inline PipelineResult run(const std::string &text,
                          const PipelineOptions &o = options(),
                          const std::string &id = "doc") {
  return run_pipeline(text, pack(), o, id);
}

inline PipelineResult run_fixture(const std::string &name,
                                  const PipelineOptions &o = options()) {
  return run(read_fixture(name), o, std::filesystem::path(name).stem().string());
}

// Sentences mixing every cue family, used by the randomized suites.
inline const std::vector<std::string> &sentence_pool() {
  static const std::vector<std::string> pool = {
      "Chez le sujet âgé, il faut surveiller la pression artérielle.",
      "Chez le sujet jeune, le traitement doit être adapté.",
      "En cas de diabète, le traitement doit être réévalué.",
      "Si la glycémie est élevée, il est recommandé de réévaluer le traitement.",
      "Le traitement est recommandé lorsque l'HbA1c est supérieure à 8%.",
      "Il faut prescrire une statine si le risque est élevé.",
      "Dans ce cas, il faut surveiller la fonction rénale.",
      "Dans les deux cas, le traitement doit être réévalué.",
      "Dans tous les cas, il convient de proposer un suivi.",
      "En effet, les données disponibles sont insuffisantes.",
      "Cependant, une surveillance peut être proposée.",
      "Les biopsies isolées sont insuffisantes (accord professionnel).",
      "Ce texte présente les objectifs du document.",
      "Le comité a recommandé ce traitement en 2001.",
      "Réaliser une biopsie en cas de doute.",
      "La dose est de 2,5 mg par jour (grade B).",
      "Lorsque la fonction rénale est altérée, la dose doit être réduite.",
      "Chez le sujet âgé, en présence d'une insuffisance rénale, la posologie "
      "doit être adaptée et la kaliémie doit être surveillée.",
  };
  return pool;
}

inline const std::vector<std::string> &heading_pool() {
  static const std::vector<std::string> pool = {
      "Hypertension artérielle", "Diabète", "Introduction", "1. Méthodes",
      "1.2 Asthme", "Recommandations"};
  return pool;
}

// A random guideline-like text: headings, paragraphs and enumerations.
inline std::string random_document(std::mt19937 &rng) {
  const auto &sentences = sentence_pool();
  const auto &headings = heading_pool();
  auto pick = [&](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  std::string out;
  const size_t blocks = 1 + pick(5);
  for (size_t b = 0; b < blocks; ++b) {
    if (b > 0) out += pick(4) == 0 ? "\n\n\n" : "\n\n";
    switch (pick(6)) {
      case 0:
        out += headings[pick(headings.size())];
        break;
      case 1:
        out += "Chez le patient diabétique :\n- surveiller la glycémie ;\n"
               "- réévaluer le traitement.";
        break;
      case 2: {
        // Conditions followed by a cohesion or rupture sentence.
        static const std::vector<std::string> openers = {
            "Chez le sujet âgé, il faut surveiller la pression artérielle.",
            "Le traitement est recommandé lorsque l'HbA1c est supérieure à 8%.",
            "Il faut prescrire une statine si le risque est élevé.",
            "Si la glycémie est élevée, il est recommandé de réévaluer le "
            "traitement."};
        static const std::vector<std::string> followers = {
            "Dans ce cas, il faut surveiller la fonction rénale.",
            "Dans les deux cas, le traitement doit être réévalué.",
            "Dans tous les cas, il convient de proposer un suivi.",
            "En effet, les données disponibles sont insuffisantes.",
            "Cependant, une surveillance peut être proposée."};
        const size_t n = 1 + pick(3);
        for (size_t s = 0; s < n; ++s) out += openers[pick(openers.size())] + " ";
        out += followers[pick(followers.size())];
        if (pick(2) == 0) out += " " + sentences[pick(sentences.size())];
        break;
      }
      default: {
        const size_t n = 1 + pick(4);
        for (size_t s = 0; s < n; ++s) {
          if (s > 0) out += pick(6) == 0 ? "\n" : (pick(3) == 0 ? "  " : " ");
          out += sentences[pick(sentences.size())];
        }
      }
    }
  }
  if (pick(2) == 0) out += "\n";
  return out;
}

// Two couple files over `total` couples that agree on exactly `common` of
// them: the disagreeing couples differ in the innermost condition.
inline std::pair<std::string, std::string> agreement_pair(int common,
                                                          int total) {
  std::vector<Couple> a, b;
  for (int i = 0; i < total; ++i) {
    std::string n = std::to_string(i);
    Couple c{{"Chez le patient " + n, "en cas de signe " + n},
             "il faut traiter le cas " + n};
    a.push_back(c);
    if (i >= common) c.chain.back() = "lorsque le signe " + n + " persiste";
    b.push_back(c);
  }
  return {format_couples(a), format_couples(b)};
}

}  // namespace gemify::testing

#endif  // GEMIFY_TESTS_TEST_SUPPORT_H_

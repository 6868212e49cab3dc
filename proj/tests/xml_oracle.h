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
#ifndef GEMIFY_TESTS_XML_ORACLE_H_
#define GEMIFY_TESTS_XML_ORACLE_H_

// Independent checks of emitted XML: Boost.PropertyTree reads it back, and the
// child sequence of every recommendation is matched against the content model
// declared in the bundled DTD.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "gemify/gem.h"

namespace gemify::testing {

inline std::string read_dtd(const std::string &name) {
  std::ifstream in(std::filesystem::path(GEMIFY_TEST_DATA_DIR) / "dtd" / name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "(a*, b+, c*)" -> "(?:a )*(?:b )+(?:c )*"
inline std::regex content_model(const std::string &dtd,
                                const std::string &element) {
  std::regex decl("<!ELEMENT " + std::regex_replace(element, std::regex("\\."),
                                                    "\\.") +
                  " \\(([^)]*)\\)>");
  std::smatch m;
  if (!std::regex_search(dtd, m, decl)) return std::regex("^$");
  std::string pattern;
  std::stringstream items(m[1].str());
  std::string item;
  while (std::getline(items, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    char q = item.back();
    std::string name = (q == '*' || q == '+' || q == '?') ? item.substr(0, item.size() - 1) : item;
    if (name == "#PCDATA") return std::regex("^$");
    pattern += "(?:" + std::regex_replace(name, std::regex("\\."), "\\.") + " )";
    if (q == '*' || q == '+' || q == '?') pattern += q;
  }
  return std::regex("^" + pattern + "$");
}

// Reads `xml` with Boost and rebuilds the document; also checks every
// recommendation against the DTD content model.
inline GemDocument independent_read(const std::string &xml, GemNames names,
                                    bool *valid) {
  namespace pt = boost::property_tree;
  const std::string dtd = read_dtd(names == GemNames::kFrench
                                       ? "gem-subset.dtd"
                                       : "gem-subset-en.dtd");
  const std::string rec_name =
      names == GemNames::kFrench ? "recommandation" : "recommendation";
  const std::regex root_model = content_model(dtd, "knowledge.component");
  const std::regex rec_model = content_model(dtd, rec_name);
  std::istringstream in(xml);
  pt::ptree tree;
  pt::read_xml(in, tree, pt::xml_parser::no_comments);
  GemDocument doc;
  *valid = tree.size() == 1 && tree.count("knowledge.component") == 1;
  std::string root_seq;
  for (const auto &[name, rec] : tree.get_child(pt::ptree::path_type("knowledge.component", '/'))) {
    if (name == "<xmltext>") continue;  // inter-element whitespace
    root_seq += name + " ";
    if (name != rec_name) continue;
    GemRecommendation r;
    std::string seq;
    for (const auto &[child, node] : rec) {
      if (child == "<xmltext>") continue;
      seq += child + " ";
      const std::string text = node.data();
      if (child == "decision.variable") r.decision_variables.push_back(text);
      if (child == "action") r.actions.push_back(text);
      if (child == "explanation") r.explanations.push_back(text);
      *valid = *valid && node.empty();
    }
    *valid = *valid && std::regex_match(seq, rec_model);
    doc.recommendations.push_back(std::move(r));
  }
  *valid = *valid && std::regex_match(root_seq, root_model);
  return doc;
}

}  // namespace gemify::testing

#endif  // GEMIFY_TESTS_XML_ORACLE_H_

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

#include "gemify/gem.h"

#include <charconv>

#include "gemify/errors.h"

namespace gemify {
namespace {

constexpr std::string_view kRoot = "knowledge.component";
constexpr std::string_view kDecisionVariable = "decision.variable";
constexpr std::string_view kAction = "action";
constexpr std::string_view kExplanation = "explanation";

std::string_view recommendation_name(GemNames names) {
  return names == GemNames::kFrench ? "recommandation" : "recommendation";
}

void append_utf8(std::string &out, unsigned cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_' || c == ':';
}

bool is_xml_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

// Strict reader for the knowledge.component subset.
class GemReader {
 public:
  explicit GemReader(std::string_view xml) : xml_(xml) {}

  GemDocument Read(std::string source_id) {
    GemDocument doc;
    doc.source_id = std::move(source_id);
    SkipMisc(/*allow_prolog=*/true);
    Tag root = OpenTag();
    if (root.name != kRoot) FailAt(root.start, "root element must be <knowledge.component>");
    if (!root.self_closing) {
      for (;;) {
        SkipMisc(false);
        if (Lookahead("</")) {
          CloseTag(kRoot);
          break;
        }
        Tag rec = OpenTag();
        if (rec.name != "recommandation" && rec.name != "recommendation") {
          FailAt(rec.start, "unexpected element <" + rec.name + ">");
        }
        if (rec_name_.empty()) rec_name_ = rec.name;
        if (rec.name != rec_name_) FailAt(rec.start, "mixed recommendation element names");
        doc.recommendations.push_back(ReadRecommendation(rec));
      }
    }
    SkipMisc(false);
    if (pos_ < xml_.size()) Fail("content after the root element");
    return doc;
  }

 private:
  struct Tag {
    std::string name;
    bool self_closing = false;
    size_t start = 0;
  };

  [[noreturn]] void Fail(const std::string &message) const {
    FailAt(pos_, message);
  }

  [[noreturn]] void FailAt(size_t at, const std::string &message) const {
    int line = 1, column = 1;
    for (size_t i = 0; i < at && i < xml_.size(); ++i) {
      if (xml_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(xml_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw GemParseError(line, column, message);
  }

  bool Lookahead(std::string_view s) const {
    return xml_.substr(pos_, s.size()) == s;
  }

  void SkipUntil(std::string_view end) {
    size_t at = xml_.find(end, pos_);
    if (at == std::string_view::npos) Fail("unterminated markup");
    pos_ = at + end.size();
  }

  void SkipMisc(bool allow_prolog) {
    for (;;) {
      while (pos_ < xml_.size() && is_xml_space(xml_[pos_])) ++pos_;
      if (Lookahead("<!--")) {
        SkipUntil("-->");
      } else if (allow_prolog && Lookahead("<?")) {
        SkipUntil("?>");
      } else if (allow_prolog && Lookahead("<!DOCTYPE")) {
        SkipUntil(">");
      } else {
        return;
      }
    }
  }

  Tag OpenTag() {
    if (!Lookahead("<")) {
      if (pos_ >= xml_.size()) Fail("unexpected end of input");
      Fail("text outside of a text element");
    }
    Tag tag;
    tag.start = pos_++;
    while (pos_ < xml_.size() && is_name_char(xml_[pos_])) tag.name += xml_[pos_++];
    if (tag.name.empty()) Fail("expected an element name");
    while (pos_ < xml_.size() && is_xml_space(xml_[pos_])) ++pos_;
    if (Lookahead("/>")) {
      pos_ += 2;
      tag.self_closing = true;
    } else if (Lookahead(">")) {
      ++pos_;
    } else if (pos_ >= xml_.size()) {
      Fail("unexpected end of input");
    } else {
      Fail("attributes are not supported on <" + tag.name + ">");
    }
    return tag;
  }

  void CloseTag(std::string_view name) {
    if (!Lookahead("</")) Fail("expected </" + std::string(name) + ">");
    pos_ += 2;
    std::string got;
    while (pos_ < xml_.size() && is_name_char(xml_[pos_])) got += xml_[pos_++];
    while (pos_ < xml_.size() && is_xml_space(xml_[pos_])) ++pos_;
    if (got != name) Fail("mismatched closing tag </" + got + ">");
    if (!Lookahead(">")) Fail("malformed closing tag");
    ++pos_;
  }

  std::string ReadText(const Tag &tag) {
    std::string out;
    if (tag.self_closing) return out;
    for (;;) {
      if (pos_ >= xml_.size()) Fail("unexpected end of input");
      char c = xml_[pos_];
      if (c == '<') {
        if (Lookahead("<!--")) {
          SkipUntil("-->");
          continue;
        }
        if (Lookahead("</")) break;
        Fail("element inside <" + tag.name + ">");
      }
      if (c == '&') {
        out += ReadEntity();
        continue;
      }
      if (c == '>') Fail("unescaped '>'");
      out += c;
      ++pos_;
    }
    CloseTag(tag.name);
    return out;
  }

  std::string ReadEntity() {
    size_t semi = xml_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10) Fail("bad entity");
    std::string_view ent = xml_.substr(pos_ + 1, semi - pos_ - 1);
    std::string out;
    if (ent == "amp") {
      out = "&";
    } else if (ent == "lt") {
      out = "<";
    } else if (ent == "gt") {
      out = ">";
    } else if (ent == "quot") {
      out = "\"";
    } else if (ent == "apos") {
      out = "'";
    } else if (ent.size() > 1 && ent[0] == '#') {
      bool hex = ent[1] == 'x';
      std::string_view digits = ent.substr(hex ? 2 : 1);
      unsigned cp = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                     cp, hex ? 16 : 10);
      if (ec != std::errc() || p != digits.data() + digits.size() || cp == 0 ||
          cp > 0x10FFFF) {
        Fail("bad character reference");
      }
      append_utf8(out, cp);
    } else {
      Fail("unknown entity &" + std::string(ent) + ";");
    }
    pos_ = semi + 1;
    return out;
  }

  GemRecommendation ReadRecommendation(const Tag &rec) {
    GemRecommendation out;
    if (rec.self_closing) Fail("recommendation without action");
    int phase = 0;  // 0 decision variables, 1 actions, 2 explanations
    for (;;) {
      SkipMisc(false);
      if (Lookahead("</")) break;
      Tag child = OpenTag();
      if (child.name == kDecisionVariable) {
        if (phase > 0) FailAt(child.start, "decision.variable after action");
        out.decision_variables.push_back(ReadText(child));
      } else if (child.name == kAction) {
        if (phase > 1) FailAt(child.start, "action after explanation");
        phase = 1;
        out.actions.push_back(ReadText(child));
      } else if (child.name == kExplanation) {
        if (phase == 0) FailAt(child.start, "explanation before any action");
        phase = 2;
        out.explanations.push_back(ReadText(child));
      } else {
        FailAt(child.start, "unexpected element <" + child.name + ">");
      }
    }
    if (out.actions.empty()) Fail("recommendation without action");
    CloseTag(rec.name);
    return out;
  }

  std::string_view xml_;
  size_t pos_ = 0;
  std::string rec_name_;
};

}  // namespace

std::optional<GemNames> parse_gem_names(std::string_view s) {
  if (s == "fr") return GemNames::kFrench;
  if (s == "en") return GemNames::kEnglish;
  return std::nullopt;
}

std::vector<GemRecommendation> group_couples(
    const std::vector<Couple> &couples, const std::vector<Couple> &explanations,
    std::vector<std::string> *warnings) {
  std::vector<GemRecommendation> out;
  std::vector<std::vector<std::string>> chains;
  std::vector<int> first_segment;
  for (const Couple &c : couples) {
    if (!out.empty() && chains.back() == c.chain) {
      out.back().actions.push_back(c.action);
      continue;
    }
    GemRecommendation rec;
    rec.decision_variables = c.chain;
    rec.actions.push_back(c.action);
    out.push_back(std::move(rec));
    chains.push_back(c.chain);
    first_segment.push_back(c.segment);
  }
  for (const Couple &e : explanations) {
    int same = -1, latest = -1;
    for (size_t g = 0; g < out.size(); ++g) {
      if (e.segment >= 0 && first_segment[g] > e.segment) break;
      latest = static_cast<int>(g);
      if (chains[g] == e.chain) same = static_cast<int>(g);
    }
    int target = same >= 0 ? same : latest;
    if (target < 0) {
      if (warnings) warnings->push_back("explanation without recommendation: " + e.action);
      continue;
    }
    out[target].explanations.push_back(e.action);
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string emit_xml(const GemDocument &doc, GemNames names) {
  if (doc.recommendations.empty()) return "<knowledge.component/>\n";
  const std::string rec(recommendation_name(names));
  std::string out = "<knowledge.component>\n";
  auto element = [&](std::string_view name, const std::string &text) {
    out += "    <" + std::string(name) + ">" + xml_escape(text) + "</" +
           std::string(name) + ">\n";
  };
  for (const GemRecommendation &r : doc.recommendations) {
    out += "  <" + rec + ">\n";
    for (const auto &v : r.decision_variables) element(kDecisionVariable, v);
    for (const auto &a : r.actions) element(kAction, a);
    for (const auto &e : r.explanations) element(kExplanation, e);
    out += "  </" + rec + ">\n";
  }
  out += "</knowledge.component>\n";
  return out;
}

GemDocument parse_gem(std::string_view xml, std::string source_id) {
  return GemReader(xml).Read(std::move(source_id));
}

}  // namespace gemify

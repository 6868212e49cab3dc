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

#ifndef GEMIFY_TEXT_H_
#define GEMIFY_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gemify {

// Half-open byte range [begin, end).
struct CharSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(const CharSpan &other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool overlaps(const CharSpan &other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const CharSpan &, const CharSpan &) = default;
  friend auto operator<=>(const CharSpan &, const CharSpan &) = default;
};

namespace text {

// Returns the offset of the first invalid UTF-8 sequence, if any.
std::optional<size_t> find_invalid_utf8(std::string_view s);

// Lowercases ASCII and Latin-1/Latin Extended-A letters, and folds the
// typographic apostrophe to '\''. Other code points are copied unchanged.
std::string normalize(std::string_view s);

// Number of code points.
size_t length(std::string_view s);

bool is_space(std::string_view s, size_t pos);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

// A word or punctuation token. Elided articles keep their apostrophe
// ("d'", "l'"), so "d'aspect" is two tokens.
struct Token {
  CharSpan span;
  std::string norm;
  bool word = false;
};

std::vector<Token> tokenize(std::string_view s);

}  // namespace text
}  // namespace gemify

#endif  // GEMIFY_TEXT_H_

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

#include "gemify/text.h"

#include <cstdint>

namespace gemify {
namespace text {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes the code point at s[pos]; sets *len to its byte length.
char32_t decode(std::string_view s, size_t pos, size_t *len) {
  unsigned char c = s[pos];
  if (c < 0x80) {
    *len = 1;
    return c;
  }
  int n;
  char32_t cp;
  if ((c & 0xE0) == 0xC0) {
    n = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    n = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    n = 4;
    cp = c & 0x07;
  } else {
    *len = 1;
    return kInvalid;
  }
  if (pos + n > s.size()) {
    *len = 1;
    return kInvalid;
  }
  for (int i = 1; i < n; ++i) {
    unsigned char cc = s[pos + i];
    if ((cc & 0xC0) != 0x80) {
      *len = 1;
      return kInvalid;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  // Reject overlong encodings and surrogates.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    *len = 1;
    return kInvalid;
  }
  *len = n;
  return cp;
}

void encode(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool space_cp(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0 || cp == 0x202F || cp == 0x2009;
}

bool apostrophe_cp(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool word_cp(char32_t cp) {
  if (cp == kInvalid) return false;
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (space_cp(cp)) return false;
  if (cp == 0x00AB || cp == 0x00BB || cp == 0x00D7 || cp == 0x00F7 ||
      cp == 0x00B7) {
    return false;
  }
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  return true;
}

bool digit_cp(char32_t cp) { return cp >= '0' && cp <= '9'; }

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  // Latin Extended-A pairs upper/lower; the parity flips twice.
  if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177)) {
    return cp % 2 == 0 ? cp + 1 : cp;
  }
  if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E)) {
    return cp % 2 == 1 ? cp + 1 : cp;
  }
  if (cp == 0x0178) return 0x00FF;
  if (cp == 0x2019) return '\'';
  return cp;
}

}  // namespace

std::optional<size_t> find_invalid_utf8(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len;
    if (decode(s, pos, &len) == kInvalid) return pos;
    pos += len;
  }
  return std::nullopt;
}

std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len;
    char32_t cp = decode(s, pos, &len);
    if (cp == kInvalid) {
      out.append(s.substr(pos, len));
    } else {
      encode(lower_cp(cp), &out);
    }
    pos += len;
  }
  return out;
}

size_t length(std::string_view s) {
  size_t n = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len;
    decode(s, pos, &len);
    pos += len;
    ++n;
  }
  return n;
}

bool is_space(std::string_view s, size_t pos) {
  if (pos >= s.size()) return false;
  size_t len;
  return space_cp(decode(s, pos, &len));
}

std::string_view trim(std::string_view s) {
  size_t begin = 0;
  while (begin < s.size()) {
    size_t len;
    if (!space_cp(decode(s, begin, &len))) break;
    begin += len;
  }
  size_t end = s.size();
  while (end > begin) {
    // Step back to the start of the previous code point.
    size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
      --start;
    }
    size_t len;
    if (!space_cp(decode(s, start, &len))) break;
    end = start;
  }
  return s.substr(begin, end - begin);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len;
    char32_t cp = decode(s, pos, &len);
    if (space_cp(cp)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.append(s.substr(pos, len));
    }
    pos += len;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len;
    char32_t cp = decode(s, pos, &len);
    if (space_cp(cp)) {
      pos += len;
      continue;
    }
    size_t begin = pos;
    if (!word_cp(cp)) {
      pos += len;
      tokens.push_back({{begin, pos}, normalize(s.substr(begin, pos - begin)),
                        false});
      continue;
    }
    char32_t prev = cp;
    pos += len;
    while (pos < s.size()) {
      size_t l;
      char32_t c = decode(s, pos, &l);
      if (word_cp(c)) {
        prev = c;
        pos += l;
        continue;
      }
      size_t nl = 0;
      char32_t next = pos + l < s.size() ? decode(s, pos + l, &nl) : kInvalid;
      if (c == '-' && word_cp(next)) {
        pos += l;
        continue;
      }
      if ((c == ',' || c == '.') && digit_cp(prev) && digit_cp(next)) {
        pos += l;
        continue;
      }
      if (apostrophe_cp(c) && word_cp(next)) {
        pos += l;  // elision: keep the apostrophe and stop
      }
      break;
    }
    tokens.push_back(
        {{begin, pos}, normalize(s.substr(begin, pos - begin)), true});
  }
  return tokens;
}

}  // namespace text
}  // namespace gemify

/* Copyright 2026 The RECAST Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "recast/text_pipeline.h"

#include <cstdint>

namespace recast {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 1;
  bool valid = false;
};

CodePoint Decode(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1, true};
  std::size_t length;
  char32_t value;
  char32_t min_value;
  if ((b0 & 0xE0) == 0xC0) {
    length = 2, value = b0 & 0x1F, min_value = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    length = 3, value = b0 & 0x0F, min_value = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    length = 4, value = b0 & 0x07, min_value = 0x10000;
  } else {
    return {};
  }
  if (pos + length > s.size()) return {};
  for (std::size_t i = 1; i < length; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {};
    value = (value << 6) | (b & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    return {};
  }
  return {value, length, true};
}

bool InRange(char32_t c, char32_t lo, char32_t hi) {
  return c >= lo && c <= hi;
}

bool IsSpace(const CodePoint& cp) {
  if (!cp.valid) return false;
  const char32_t c = cp.value;
  if (c < 0x80) return IsAsciiSpace(static_cast<char>(c));
  return c == 0x85 || c == 0xA0 || c == 0x1680 || InRange(c, 0x2000, 0x200A) ||
         c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

bool IsWordChar(const CodePoint& cp) {
  if (!cp.valid) return false;
  const char32_t c = cp.value;
  if (c < 0x80) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z');
  }
  if (IsSpace(cp)) return false;
  if (InRange(c, 0x80, 0x9F)) return false;
  if (InRange(c, 0xA1, 0xBF)) {
    // ª ² ³ µ ¹ º ¼ ½ ¾ behave like letters/digits.
    return c == 0xAA || c == 0xB2 || c == 0xB3 || c == 0xB5 || c == 0xB9 ||
           c == 0xBA || InRange(c, 0xBC, 0xBE);
  }
  if (c == 0xD7 || c == 0xF7) return false;
  if (InRange(c, 0x200B, 0x206F)) return false;
  if (InRange(c, 0x20A0, 0x20CF)) return false;
  if (InRange(c, 0x2190, 0x2BFF)) return false;
  if (InRange(c, 0x3001, 0x303F)) return false;
  if (InRange(c, 0xFE30, 0xFE4F)) return false;
  if (c == 0xFE0F || c == 0xFEFF) return false;
  if (InRange(c, 0xFF01, 0xFF0F) || InRange(c, 0xFF1A, 0xFF20) ||
      InRange(c, 0xFF3B, 0xFF40) || InRange(c, 0xFF5B, 0xFF65)) {
    return false;
  }
  if (InRange(c, 0x1F000, 0x1FAFF)) return false;
  return true;
}

bool IsJoiner(const CodePoint& cp) {
  return cp.valid &&
         (cp.value == '\'' || cp.value == '-' || cp.value == 0x2019);
}

// Latin-1 letters live at U+00C0..U+00FE; upper and lower differ by 0x20.
// The two-byte UTF-8 forms are C3 80..C3 9E (upper) and C3 A0..C3 BE (lower).
bool IsLatin1Upper(std::string_view s, std::size_t i) {
  return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC3 &&
         static_cast<unsigned char>(s[i + 1]) >= 0x80 &&
         static_cast<unsigned char>(s[i + 1]) <= 0x9E &&
         static_cast<unsigned char>(s[i + 1]) != 0x97;
}

bool IsLatin1Lower(std::string_view s, std::size_t i) {
  return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC3 &&
         static_cast<unsigned char>(s[i + 1]) >= 0xA0 &&
         static_cast<unsigned char>(s[i + 1]) <= 0xBE &&
         static_cast<unsigned char>(s[i + 1]) != 0xB7;
}

}  // namespace

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
         c == '\r';
}

std::vector<TokenSpan> Tokenize(std::string_view input) {
  std::vector<TokenSpan> spans;
  std::size_t pos = 0;
  while (pos < input.size()) {
    const CodePoint cp = Decode(input, pos);
    if (IsSpace(cp)) {
      pos += cp.length;
      continue;
    }
    if (!IsWordChar(cp)) {
      spans.push_back({std::string(input.substr(pos, cp.length)), pos,
                       pos + cp.length, TokenKind::kPunctuation});
      pos += cp.length;
      continue;
    }
    const std::size_t start = pos;
    pos += cp.length;
    while (pos < input.size()) {
      const CodePoint next = Decode(input, pos);
      if (IsWordChar(next)) {
        pos += next.length;
        continue;
      }
      if (IsJoiner(next) && pos + next.length < input.size() &&
          IsWordChar(Decode(input, pos + next.length))) {
        pos += next.length;
        continue;
      }
      break;
    }
    spans.push_back({std::string(input.substr(start, pos - start)), start, pos,
                     TokenKind::kWord});
  }
  return spans;
}

std::vector<TokenSpan> WordsOnly(const std::vector<TokenSpan>& spans) {
  std::vector<TokenSpan> words;
  for (const auto& span : spans) {
    if (span.kind == TokenKind::kWord) words.push_back(span);
  }
  return words;
}

std::string ToLowerWord(std::string_view word) {
  std::string out(word);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] >= 'A' && out[i] <= 'Z') {
      out[i] = static_cast<char>(out[i] - 'A' + 'a');
    } else if (IsLatin1Upper(out, i)) {
      out[i + 1] = static_cast<char>(out[i + 1] + 0x20);
      ++i;
    }
  }
  return out;
}

std::string CapitalizeFirst(std::string_view word) {
  std::string out(word);
  if (out.empty()) return out;
  if (out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  } else if (IsLatin1Lower(out, 0)) {
    out[1] = static_cast<char>(out[1] - 0x20);
  }
  return out;
}

bool StartsUppercase(std::string_view word) {
  if (word.empty()) return false;
  return (word[0] >= 'A' && word[0] <= 'Z') || IsLatin1Upper(word, 0);
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() && ToLowerWord(a) == ToLowerWord(b);
}

}  // namespace recast

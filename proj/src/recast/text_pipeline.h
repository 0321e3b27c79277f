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

#ifndef RECAST_TEXT_PIPELINE_H_
#define RECAST_TEXT_PIPELINE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace recast {

enum class TokenKind { kWord, kPunctuation };

// One token of the input. `text` is the exact slice [byte_start, byte_end) of
// the source, offsets are UTF-8 byte offsets on code point boundaries.
struct TokenSpan {
  std::string text;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  TokenKind kind = TokenKind::kWord;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Words are maximal runs of letters/digits, with an apostrophe or hyphen kept
// when it sits between two word characters ("don't", "well-known"). Every
// other non-whitespace code point is its own punctuation span. Non-ASCII code
// points count as letters unless they fall in a known space, punctuation or
// symbol block. Bytes that are not valid UTF-8 become one-byte punctuation.
std::vector<TokenSpan> Tokenize(std::string_view input);

std::vector<TokenSpan> WordsOnly(const std::vector<TokenSpan>& spans);

// Lowercases ASCII and Latin-1 letters; other bytes pass through untouched.
std::string ToLowerWord(std::string_view word);

// Uppercases the first character (ASCII or Latin-1 letter) of `word`.
std::string CapitalizeFirst(std::string_view word);

// True when the first character is an ASCII or Latin-1 uppercase letter.
bool StartsUppercase(std::string_view word);

// ASCII + Latin-1 case folding comparison.
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

bool IsAsciiSpace(char c);

}  // namespace recast

#endif  // RECAST_TEXT_PIPELINE_H_

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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace recast {
namespace {

TokenSpan Word(std::string text, std::size_t start, std::size_t end) {
  return {std::move(text), start, end, TokenKind::kWord};
}

TokenSpan Punct(std::string text, std::size_t start, std::size_t end) {
  return {std::move(text), start, end, TokenKind::kPunctuation};
}

TEST(TokenizeTest, SentenceWithTrailingPeriod) {
  EXPECT_EQ(
      Tokenize("You are idiotic."),
      (std::vector<TokenSpan>{Word("You", 0, 3), Word("are", 4, 7),
                              Word("idiotic", 8, 15), Punct(".", 15, 16)}));
}

TEST(TokenizeTest, WhitespaceOnlyIsEmpty) {
  EXPECT_TRUE(Tokenize("  ").empty());
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("\t\r\n \xC2\xA0").empty());
}

TEST(TokenizeTest, MultibyteLettersAndInternalApostrophe) {
  EXPECT_EQ(Tokenize("na\xC3\xAFve don't"),
            (std::vector<TokenSpan>{Word("na\xC3\xAFve", 0, 6),
                                    Word("don't", 7, 12)}));
}

TEST(TokenizeTest, JoinersOnlyBetweenWordCharacters) {
  EXPECT_EQ(Tokenize("well-known"),
            (std::vector<TokenSpan>{Word("well-known", 0, 10)}));
  EXPECT_EQ(Tokenize("rock\xE2\x80\x99n"),
            (std::vector<TokenSpan>{Word("rock\xE2\x80\x99n", 0, 8)}));
  EXPECT_EQ(Tokenize("'quoted'"),
            (std::vector<TokenSpan>{Punct("'", 0, 1), Word("quoted", 1, 7),
                                    Punct("'", 7, 8)}));
  EXPECT_EQ(Tokenize("end- x"),
            (std::vector<TokenSpan>{Word("end", 0, 3), Punct("-", 3, 4),
                                    Word("x", 5, 6)}));
  EXPECT_EQ(Tokenize("a--b"),
            (std::vector<TokenSpan>{Word("a", 0, 1), Punct("-", 1, 2),
                                    Punct("-", 2, 3), Word("b", 3, 4)}));
}

TEST(TokenizeTest, SymbolsAndEmojiArePunctuation) {
  EXPECT_EQ(
      Tokenize("ok\xF0\x9F\x98\x80!"),
      (std::vector<TokenSpan>{Word("ok", 0, 2), Punct("\xF0\x9F\x98\x80", 2, 6),
                              Punct("!", 6, 7)}));
  EXPECT_EQ(Tokenize("\xE2\x80\x94"),
            (std::vector<TokenSpan>{Punct("\xE2\x80\x94", 0, 3)}));
}

TEST(TokenizeTest, CjkIsWord) {
  EXPECT_EQ(Tokenize("\xE6\x97\xA5\xE6\x9C\xAC"),
            (std::vector<TokenSpan>{Word("\xE6\x97\xA5\xE6\x9C\xAC", 0, 6)}));
}

TEST(TokenizeTest, InvalidBytesBecomeSingleBytePunctuation) {
  EXPECT_EQ(Tokenize("a\xFF"
                     "b"),
            (std::vector<TokenSpan>{Word("a", 0, 1), Punct("\xFF", 1, 2),
                                    Word("b", 2, 3)}));
  EXPECT_EQ(Tokenize("\xC3"), (std::vector<TokenSpan>{Punct("\xC3", 0, 1)}));
}

TEST(WordsOnlyTest, Examples) {
  EXPECT_EQ(WordsOnly(Tokenize("You are idiotic.")).size(), 3u);
  EXPECT_TRUE(WordsOnly(Tokenize("!!!")).empty());
  EXPECT_EQ(WordsOnly(Tokenize("a b")),
            (std::vector<TokenSpan>{Word("a", 0, 1), Word("b", 2, 3)}));
}

TEST(CaseTest, AsciiAndLatin1) {
  EXPECT_EQ(ToLowerWord("IdIoTiC"), "idiotic");
  EXPECT_EQ(ToLowerWord("\xC3\x89T\xC3\x89"), "\xC3\xA9t\xC3\xA9");  // ÉTÉ
  EXPECT_EQ(ToLowerWord("stra\xC3\x9F"
                        "e"),
            "stra\xC3\x9F"
            "e");  // ß stays
  EXPECT_EQ(CapitalizeFirst("idiotic"), "Idiotic");
  EXPECT_EQ(CapitalizeFirst("\xC3\xA9t\xC3\xA9"), "\xC3\x89t\xC3\xA9");
  EXPECT_EQ(CapitalizeFirst("9lives"), "9lives");
  EXPECT_EQ(CapitalizeFirst(""), "");
  EXPECT_TRUE(StartsUppercase("Idiotic"));
  EXPECT_TRUE(StartsUppercase("\xC3\x89t\xC3\xA9"));
  EXPECT_FALSE(StartsUppercase("idiotic"));
  EXPECT_FALSE(StartsUppercase("\xC3\x97"));  // multiplication sign
  EXPECT_TRUE(EqualsIgnoreCase("Idiot", "iDIOT"));
  EXPECT_FALSE(EqualsIgnoreCase("idiot", "idiots"));
}

// Fuzz pieces tagged by whether they are whitespace. Whitespace pieces must
// never be covered by a span; everything else must be covered exactly once.
struct Piece {
  const char* bytes;
  bool whitespace;
};

constexpr Piece kPieces[] = {
    {"a", false},
    {"Z", false},
    {"7", false},
    {"xy", false},
    {" ", true},
    {"\t", true},
    {"\n", true},
    {"\r", true},
    {"\xC2\xA0", true},
    {"\xE3\x80\x80", true},
    {".", false},
    {",", false},
    {"!", false},
    {"?", false},
    {"'", false},
    {"-", false},
    {"\xE2\x80\x99", false},
    {"\xC3\xAF", false},
    {"\xC3\x89", false},
    {"\xE2\x80\x94", false},
    {"\xF0\x9F\x98\x80", false},
    {"\xE6\x97\xA5", false},
    {"\xFF", false},
    {"\xC3", false},
    {"\x80", false},
    {"(", false},
    {"\"", false},
};

// Independent strict UTF-8 validator (no overlongs, surrogates or values
// past U+10FFFF).
bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    unsigned char lo = 0x80, hi = 0xBF;
    if (c <= 0x7F) {
      n = 0;
    } else if (c >= 0xC2 && c <= 0xDF) {
      n = 1;
    } else if (c >= 0xE0 && c <= 0xEF) {
      n = 2;
      if (c == 0xE0) lo = 0xA0;
      if (c == 0xED) hi = 0x9F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      n = 3;
      if (c == 0xF0) lo = 0x90;
      if (c == 0xF4) hi = 0x8F;
    } else {
      return false;
    }
    if (i + n >= s.size() && n > 0) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      const unsigned char min = k == 1 ? lo : 0x80;
      const unsigned char max = k == 1 ? hi : 0xBF;
      if (b < min || b > max) return false;
    }
    i += n + 1;
  }
  return true;
}

TEST(TokenizePropertyTest, CoverageAndOffsetsOnFuzzCorpus) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> length_dist(0, 24);
  std::uniform_int_distribution<std::size_t> piece_dist(0,
                                                        std::size(kPieces) - 1);
  for (int iteration = 0; iteration < 10000; ++iteration) {
    std::string input;
    std::vector<bool> whitespace_byte;
    const int pieces = length_dist(rng);
    for (int p = 0; p < pieces; ++p) {
      const Piece& piece = kPieces[piece_dist(rng)];
      const std::string bytes = piece.bytes;
      input += bytes;
      whitespace_byte.insert(whitespace_byte.end(), bytes.size(),
                             piece.whitespace);
    }
    SCOPED_TRACE(::testing::PrintToString(input));

    const std::vector<TokenSpan> spans = Tokenize(input);
    std::vector<int> covered(input.size(), 0);
    std::size_t previous_end = 0;
    for (const TokenSpan& span : spans) {
      ASSERT_LT(span.byte_start, span.byte_end);
      ASSERT_LE(span.byte_end, input.size());
      ASSERT_GE(span.byte_start, previous_end);
      previous_end = span.byte_end;
      ASSERT_EQ(span.text,
                input.substr(span.byte_start, span.byte_end - span.byte_start));
      for (std::size_t b = span.byte_start; b < span.byte_end; ++b) {
        ++covered[b];
      }
      if (span.kind == TokenKind::kWord) {
        // Words hold only decodable text, so both ends are code point
        // boundaries.
        ASSERT_TRUE(IsValidUtf8(span.text));
      }
    }
    for (std::size_t b = 0; b < input.size(); ++b) {
      ASSERT_EQ(covered[b], whitespace_byte[b] ? 0 : 1) << "byte " << b;
    }
    ASSERT_EQ(Tokenize(input), spans);
  }
}

}  // namespace
}  // namespace recast
